"""Named verification suites and the runner behind the command line."""
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import forms, hypergeom, families, weight1, jfamily, mirror, pde
from .report import VerificationReport

F = Fraction

UNIVARIATE_ORDER = 40
BIVARIATE_ORDER = 10
MIRROR_ORDER = 20

SUITES = ("forms", "hypergeom", "thm21-random", "thm31", "thm41", "thm51", "thm52-transforms",
          "example41", "schwarzian", "mirror", "op-equiv", "all")

DEFAULT_ORDER = {
    "forms": UNIVARIATE_ORDER,
    "hypergeom": UNIVARIATE_ORDER,
    "thm21-random": BIVARIATE_ORDER,
    "thm31": BIVARIATE_ORDER,
    "thm41": UNIVARIATE_ORDER,
    "thm51": BIVARIATE_ORDER,
    "thm52-transforms": UNIVARIATE_ORDER,
    "example41": BIVARIATE_ORDER,
    "schwarzian": UNIVARIATE_ORDER,
    "mirror": MIRROR_ORDER,
    "op-equiv": 0,
}

DEFAULT_SEED = 42


class UnknownSuite(KeyError):
    pass


@dataclass
class SuiteConfig:
    name: str
    order: int | None = None
    seed: int | None = None
    instances: int = 25
    # optional narrowing: a, b for the families, case for the weight-one forms
    params: dict = field(default_factory=dict)

    def resolved_order(self):
        return DEFAULT_ORDER[self.name] if self.order is None else self.order


def _equal_params(cfg):
    a = cfg.params.get("a")
    return families.EQUAL_PARAMS if a is None else (F(a),)


def _pair_params(cfg):
    a, b = cfg.params.get("a"), cfg.params.get("b")
    if a is None and b is None:
        return hypergeom.PAIRS
    if a is None or b is None:
        raise ValueError("thm51 needs both --a and --b")
    return ((F(a), F(b)),)


def _schwarzian_items(order):
    items = []
    for a in families.EQUAL_PARAMS:
        items.extend(families.schwarzian_items("equal", (a,), order))
        items.append(families.schwarzian_q_item(a, a, order))
    for a, b in hypergeom.PAIRS:
        items.extend(families.schwarzian_items("pair", (a, b), order))
        items.append(families.schwarzian_q_item(a, b, order))
    items.append(families.schwarzian_degenerate_item(order))
    return items


def _example41_items(order):
    uni = max(order, 30)
    items = jfamily.j_identity_items(max(order, 25))
    items.extend(jfamily.one_variable_items(uni))
    items.extend(hypergeom.classical_e4_items(uni))
    items.append(hypergeom.transform_item("kummer_quadratic", (F(1, 12), F(5, 12)), uni,
                                          ident="kummer(1/12,5/12)"))
    items.extend(families.with_margin(jfamily.j_family_items, order, 4))
    return items


def _items(cfg, order):
    name = cfg.name
    if name == "forms":
        return forms.forms_items(order)
    if name == "hypergeom":
        return hypergeom.hypergeom_items(order)
    if name == "thm21-random":
        seed = DEFAULT_SEED if cfg.seed is None else cfg.seed
        return pde.random_instance_items(seed, cfg.instances, order)
    if name == "thm31":
        out = []
        for a in _equal_params(cfg):
            out.extend(families.closed_form_coeff_check("equal", (a,), order).items)
        return out
    if name == "thm41":
        case = cfg.params.get("case")
        out = []
        for c in (weight1.CASES if case is None else (case,)):
            out.extend(weight1.weight1_items(c, order))
        return out
    if name == "thm51":
        out = []
        for a, b in _pair_params(cfg):
            out.extend(families.closed_form_coeff_check("pair", (a, b), order).items)
        return out
    if name == "thm52-transforms":
        return hypergeom.thm52_items(order)
    if name == "example41":
        return _example41_items(order)
    if name == "schwarzian":
        return _schwarzian_items(order)
    if name == "mirror":
        return mirror.mirror_items(order)
    if name == "op-equiv":
        return mirror.operator_equiv_items()
    raise UnknownSuite(name)


def run_suite(name, order=None, seed=None, **kw):
    """Run one named suite (or ``all``) and return its report."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    if order is not None and order < 2 and name != "op-equiv":
        raise ValueError("order must be at least 2")
    start = time.perf_counter()
    if name == "all":
        seed = DEFAULT_SEED if seed is None else seed
        rep = VerificationReport("all", None, seed)
        for sub in SUITES[:-1]:
            sub_cfg = SuiteConfig(sub, None, seed)
            for it in _items(sub_cfg, sub_cfg.resolved_order()):
                it.id = f"{sub}/{it.id}"
                rep.add(it)
    else:
        cfg = SuiteConfig(name, order, seed, kw.pop("instances", 25), kw)
        n = cfg.resolved_order()
        if name == "thm21-random":
            seed = DEFAULT_SEED if seed is None else seed
        rep = VerificationReport(name, n, seed)
        rep.extend(_items(cfg, n))
    rep.elapsed_ms = (time.perf_counter() - start) * 1000
    return rep
