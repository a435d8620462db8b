"""Acceptance criteria 1-10, one pass/fail line each.

Run under pytest (lines appear in the terminal summary) or directly:

    python3 tests/test_acceptance.py

Criteria 4 and 6 each contain one literal claim that the exact arithmetic
refutes (a sign). Their lines read FAIL; the pytest tests assert the corrected
identities and keep the literal claims as strict xfails.
"""
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))
import oracles  # noqa: E402
from conftest import ACCEPTANCE_LINES  # noqa: E402

from modpde import forms, hypergeom, weight1  # noqa: E402
from modpde.series import pow_rational  # noqa: E402
from modpde.suites import run_suite  # noqa: E402

pytestmark = pytest.mark.slow


class Outcome:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failures = []    # hard failures of the corrected checks
        self.refuted = []     # literal claims refuted by exact arithmetic
        self.notes = []
        self.start = time.perf_counter()
        self.budget = None

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def check_report(self, rep, allowed_skips=()):
        for it in rep.items:
            if it.status == "fail":
                self.failures.append(f"{it.id}: {it.first_failure}")
            elif it.status == "skipped" and not any(s in it.id for s in allowed_skips):
                self.failures.append(f"{it.id} skipped: {it.detail}")

    @property
    def elapsed(self):
        return time.perf_counter() - self.start

    @property
    def corrected_ok(self):
        return not self.failures and (self.budget is None or self.elapsed < self.budget)

    @property
    def literal_ok(self):
        return self.corrected_ok and not self.refuted

    def line(self):
        status = "PASS" if self.literal_ok else "FAIL"
        budget = "" if self.budget is None else f" < {self.budget:.0f} s"
        text = f"criterion {self.number:2d} {status}  {self.title}  [{self.elapsed:.1f} s{budget}]"
        details = self.failures + [f"refuted: {r}" for r in self.refuted] + self.notes
        if self.budget is not None and self.elapsed >= self.budget:
            details.append("over the time budget")
        return "\n".join([text] + [f"             - {d}" for d in details])

    def record(self):
        ACCEPTANCE_LINES[self.number] = self.line()
        return self


def _known(s, n, start=0):
    return [s[start + k] for k in range(n)]


def criterion_1():
    out = Outcome(1, "classical forms against brute-force oracles; Ramanujan to 50; Jacobi to 40")
    out.budget = 10
    n = 31
    for k in (2, 4, 6):
        out.check(_known(forms.eisenstein(k, 30), n) == oracles.eisenstein(k, n), f"E{k}")
    out.check(_known(forms.eta(30), 30, F(1, 24)) == oracles.euler_product(30), "eta")
    out.check(_known(forms.theta3(30), n) == oracles.theta3(n), "theta3")
    out.check(_known(forms.theta4(30), n) == oracles.theta4(n), "theta4")
    out.check(_known(forms.theta2(30), 30, F(1, 4)) == oracles.theta2_over_q14(30), "theta2")
    for it in forms.ramanujan_items(50) + forms.theta_jacobi_items(40)[:1]:
        out.check(it.status == "pass", f"{it.id}: {it.first_failure}")
    return out.record()


def criterion_2():
    out = Outcome(2, "25 seeded random contexts at bivariate order 10, zero residuals")
    out.budget = 60
    rep = run_suite("thm21-random", 10, 42)
    out.check(len(rep.items) == 50, f"expected 50 residual items, got {len(rep.items)}")
    out.check_report(rep)
    return out.record()


def criterion_3():
    out = Outcome(3, "equal-parameter family, a in {1/2,1/3,1/4,1/6}, bivariate order 12")
    out.budget = 60
    rep = run_suite("thm31", 12)
    out.check_report(rep)
    for a in ("1/2", "1/3", "1/4", "1/6"):
        for part in ("coeff.a0", "coeff.a2", "coeff.a3", "hgde_x", "hgde_y"):
            ident = f"equal(a={a}).{part}"
            out.check(any(it.id == ident and it.status == "pass" for it in rep.items), ident)
    return out.record()


def criterion_4():
    out = Outcome(4, "weight-one forms: h hypergeometric and both coefficient ratios, order 40")
    rep_items = []
    for case in weight1.CASES:
        rep_items.extend(weight1.weight1_items(case, 40))
    for it in rep_items:
        if it.id.endswith("ratio_R_negated"):
            if it.status != "pass":
                out.refuted.append(f"{it.id}: {it.detail}")
        elif it.status != "pass":
            out.failures.append(f"{it.id}: {it.first_failure or it.detail}")
    if out.refuted:
        out.notes.append("corrected ratio R = +a^2 t/(1-t) (case b: +t/(9(1-t))) holds to order 40")
    return out.record()


def criterion_5():
    out = Outcome(5, "eight (a,b) pairs at bivariate order 10; level-three transformations to 30")
    rep = run_suite("thm51", 10)
    out.check_report(rep, allowed_skips=("a3_unhalved",))
    out.check(len(rep.items) == 120, f"expected 120 items, got {len(rep.items)}")
    out.check_report(run_suite("thm52-transforms", 30))
    out.notes.append("a3 carries the factor 1/2; the unhalved form is reported as a skip")
    return out.record()


def criterion_6():
    out = Outcome(6, "j family: j from t to 25, bivariate system at 10, Kummer and E4 to 30")
    rep = run_suite("example41", 10)
    expected_skips = ("j_from_t_positive", "system.2_negated", "f_ode_plus_sign")
    for it in rep.items:
        if it.id == "jfamily.j_from_t_positive":
            if it.status != "pass":
                out.refuted.append(f"j = +432 (t-1)^2/t: {it.detail}")
        elif it.status == "fail" or (it.status == "skipped" and it.id.split(".", 1)[1] not in
                                     expected_skips):
            out.failures.append(f"{it.id}: {it.first_failure or it.detail}")
    for ident, order in (("jfamily.j_from_t", 25), ("e4.classical", 30), ("kummer(1/12,5/12)", 30),
                         ("jfamily.system.1", 10), ("jfamily.system.2", 10)):
        hit = [it for it in rep.items if it.id == ident]
        out.check(hit and hit[0].status == "pass" and hit[0].order >= order, f"{ident} at {order}")
    if out.refuted:
        out.notes.append("j = -432 (t-1)^2/t holds to order 25; the sign cancels in y = J1 J2/x^2")
    out.notes.append("second equation uses +y D_x F; the -y D_x F form leaves a residual")
    return out.record()


def criterion_7():
    out = Outcome(7, "mirror relations I-IV to 20, E4 and j for case I, Clausen to 30")
    rep = run_suite("mirror", 20)
    out.check_report(rep)
    j_q1 = [it for it in rep.items if it.id == "mirror.I.j_q1"]
    out.check(j_q1 and j_q1[0].status == "pass", "196884")
    for a, b in hypergeom.CLAUSEN_PAIRS:
        it = hypergeom.transform_item("clausen", (a, b), 30)
        out.check(it.status == "pass", f"Clausen ({a},{b}): {it.first_failure}")
    return out.record()


def criterion_8():
    out = Outcome(8, "symbolic operator equalities including the (lambda, nu) table")
    rep = run_suite("op-equiv")
    out.check_report(rep, allowed_skips=("swapped_pairing",))
    out.check(sum(1 for it in rep.items if it.id.startswith("opeq.table.")
                  and it.status == "pass") == 4, "table identifications")
    out.notes.append("quartic pairs with a = 1/4 and cubic with a = 1/3; the swapped pairing is "
                     "reported as a skip")
    return out.record()


def criterion_9():
    out = Outcome(9, "Schwarzian identities for every parameter case, order 25")
    out.check_report(run_suite("schwarzian", 25))
    return out.record()


def criterion_10():
    out = Outcome(10, "verify all at default orders, exit code 0")
    out.budget = 300
    rep = run_suite("all")
    out.check(rep.exit_code == 0, f"exit code {rep.exit_code}")
    out.notes.append(f"{len(rep.items)} items, "
                     f"{sum(it.status == 'skipped' for it in rep.items)} documented skips")
    return out.record()


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10]


# -- pytest wrappers ----------------------------------------------------------------

@pytest.mark.parametrize("fn", [c for c in CRITERIA if c not in (criterion_4, criterion_6)],
                         ids=lambda f: f.__name__)
def test_criterion(fn):
    out = fn()
    assert out.literal_ok, out.line()


def test_criterion_4_corrected_identities():
    out = criterion_4()
    assert out.corrected_ok, out.line()


@pytest.mark.xfail(strict=True, reason="the negated ratio -a^2 t/(1-t) is refuted by exact arithmetic")
def test_criterion_4_literal():
    h, t = forms.w1pair("b", 42)
    _, _, _, r = weight1.coefficient_ratios(h / pow_rational(1 - t, F(1, 3)), t)
    target = -t / (9 * (1 - t))
    assert all(r[k] == target[k] for k in range(41))


def test_criterion_6_corrected_identities():
    out = criterion_6()
    assert out.corrected_ok, out.line()


@pytest.mark.xfail(strict=True, reason="j = +432 (t-1)^2/t is refuted at q^-1")
def test_criterion_6_literal():
    t = forms.t_example(27)
    rhs = 432 * (t - 1) * (t - 1) / t
    assert [rhs[e] for e in range(-1, 26)] == oracles.j_laurent(27)


if __name__ == "__main__":
    for fn in CRITERIA:
        print(fn().line(), flush=True)
