"""Verification items, reports, and the series comparisons that produce them."""
import json
from dataclasses import dataclass, field, asdict
from fractions import Fraction

from .series import PSeries
from .bivariate import BiFrac

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass
class Item:
    id: str
    anchor: str
    order: int
    status: str
    detail: str = ""
    first_failure: str | None = None

    @property
    def ok(self):
        return self.status != FAIL


@dataclass
class VerificationReport:
    suite: str
    order: int
    seed: int | None = None
    items: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    def add(self, item):
        self.items.append(item)
        return item

    def extend(self, items):
        self.items.extend(items)

    @property
    def ok(self):
        return all(it.ok for it in self.items)

    @property
    def exit_code(self):
        return 0 if self.ok else 1

    def sorted_items(self):
        return sorted(self.items, key=lambda it: it.id)

    def to_dict(self):
        return {
            "suite": self.suite,
            "order": self.order,
            "seed": self.seed,
            "items": [asdict(it) for it in self.sorted_items()],
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self):
        lines = [f"suite {self.suite}  order {self.order}  seed {self.seed}"]
        for it in self.sorted_items():
            tag = {PASS: "PASS", FAIL: "FAIL", SKIP: "SKIP"}[it.status]
            extra = f"  [{it.detail}]" if it.detail else ""
            lines.append(f"  {tag}  {it.id}  (order {it.order}){extra}")
            if it.first_failure:
                lines.append(f"        first failing term: {it.first_failure}")
        n_fail = sum(1 for it in self.items if it.status == FAIL)
        n_skip = sum(1 for it in self.items if it.status == SKIP)
        lines.append(f"{len(self.items)} items, {n_fail} failed, {n_skip} skipped, "
                     f"{self.elapsed_ms:.0f} ms")
        return "\n".join(lines)


def _fmt(x):
    return str(Fraction(x))


def series_item(ident, anchor, order, lhs, rhs, detail=""):
    """Compare two PSeries on all exponents <= order."""
    lhs, rhs = PSeries.coerce(lhs), PSeries.coerce(rhs)
    diff = lhs - rhs
    if diff.prec is not None and diff.prec <= order:
        return Item(ident, anchor, order, FAIL, detail,
                    f"only known below q^{_fmt(diff.prec)}, need order {order}")
    hit = None
    for e, c in diff.terms():
        if e <= order:
            hit = (e, c)
            break
    if hit is None:
        return Item(ident, anchor, order, PASS, detail)
    e, _ = hit
    return Item(ident, anchor, order, FAIL, detail,
                f"q^{_fmt(e)}: {_fmt(lhs[e])} vs {_fmt(rhs[e])}")


def zero_series_item(ident, anchor, order, residual, detail=""):
    return series_item(ident, anchor, order, residual, PSeries([]), detail)


def bi_zero_item(ident, anchor, order, value, detail=""):
    """Pass iff the cleared numerator of a bivariate value vanishes through total degree ``order``."""
    v = BiFrac.of(value)
    eff = v.cleared_order()
    hit = v.num.first_nonzero()
    note = f"cleared order {eff}"
    if v.atoms:
        note += f", denominator valuation {v.den_valuation()}"
    detail = f"{detail}; {note}" if detail else note
    if hit is not None:
        i, j, c = hit
        return Item(ident, anchor, order, FAIL, detail,
                    f"u1^{i} u2^{j} of cleared numerator: {_fmt(c)}")
    if eff < order:
        return Item(ident, anchor, order, FAIL, detail,
                    f"vanishes only to total degree {eff}")
    return Item(ident, anchor, order, PASS, detail)


def bi_equal_item(ident, anchor, order, lhs, rhs, detail=""):
    return bi_zero_item(ident, anchor, order, BiFrac.of(lhs) - BiFrac.of(rhs), detail)


def bool_item(ident, anchor, order, ok, detail="", failure=None):
    return Item(ident, anchor, order, PASS if ok else FAIL, detail,
                None if ok else (failure or "check failed"))


def skip_item(ident, anchor, order, reason):
    return Item(ident, anchor, order, SKIP, reason)
