"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL ...`` line (shown even
under output capture) and then asserts.  Run alone with

    pytest -v tests/test_acceptance.py
"""
import time


from qtmac import verify
from qtmac.kostka import multivariate_kostka
from qtmac.macdonald import interp
from qtmac.partitions import EMPTY, Partition
from qtmac.qtalgebra import q, t
from qtmac.symfunc import Basis, SymFunc
from qtmac.verify import Budget, SuiteResult

P = Partition


def report(capsys, number: int, title: str, res: SuiteResult, started: float, limit: float | None = None):
    elapsed = time.perf_counter() - started
    in_time = limit is None or elapsed < limit
    ok = res.passed and in_time
    tail = f"{res.checked} cases, {elapsed:.1f}s"
    if limit is not None:
        tail += f" (target < {limit:.0f}s)"
    if res.counterexample:
        tail += f"; first failure: {res.counterexample}"
    with capsys.disabled():
        print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'} {title}: {tail}")
    assert res.passed, res.counterexample
    assert in_time, f"took {elapsed:.1f}s"


def test_01_dual_route(capsys):
    t0 = time.perf_counter()
    res = verify.suite_dual_route(Budget(max_size=5))
    assert res.checked == 18
    report(capsys, 1, "P-then-J equals Gram-Schmidt for |lam| <= 5", res, t0, 120)


def test_02_q1_factorization(capsys):
    t0 = time.perf_counter()
    res = verify.suite_q1_factorization(Budget(max_size=6))
    report(capsys, 2, "J(lam+mu) = J(lam) J(mu) at q = 1, |lam|+|mu| <= 6", res, t0)


def test_03_small_cumulant(capsys):
    t0 = time.perf_counter()
    res = verify.suite_scp(Budget(max_size=5, r=3), interp_max=4)
    report(capsys, 3, "kappa = O((q-1)^(r-1)), r in {2,3}, J size <= 5, interp size <= 4", res, t0, 900)


def test_04_hook_sfp(capsys):
    t0 = time.perf_counter()
    res = verify.suite_sfp(Budget(max_size=8, r=4))
    report(capsys, 4, "hook family ord T_H >= |H|-1, r <= 4, size <= 8", res, t0)


def test_05_ie_vanishing(capsys):
    t0 = time.perf_counter()
    res = verify.suite_ie(Budget(r=4), max_part=3, n_max=4)
    ones = verify.ie_one_matches_binomial(verify._boxed(3, 4), 4)
    bad = [line for ok, line in ones if not ok]
    merged = SuiteResult("ie", res.passed and not bad, res.checked + len(ones),
                         counterexample=res.counterexample or (bad[0] if bad else ""))
    report(capsys, 5, "IE_j = 0 for j < r <= 4, parts <= 3, N <= 4; IE_1 = b_1", merged, t0)


def test_06_interpolation(capsys):
    t0 = time.perf_counter()
    props = verify.suite_interp(Budget(max_size=4))
    eigen = verify.suite_eigen(Budget(max_size=3))
    merged = SuiteResult("interp", props.passed and eigen.passed, props.checked + eigen.checked,
                         counterexample=props.counterexample or eigen.counterexample)
    report(capsys, 6, "vanishing + top degree (|lam| <= 4), eigen (|lam| <= 3)", merged, t0)


def test_07_leibniz_identity(capsys):
    t0 = time.perf_counter()
    res = verify.suite_leibniz(Budget(samples=100, seed=0))
    assert res.checked >= 100
    report(capsys, 7, "forced d^k action equals derivative expansion, r <= 3, k <= 3", res, t0)


def test_08_mobius_weisner(capsys):
    t0 = time.perf_counter()
    res = verify.suite_weisner(Budget(seed=0), exhaustive_up_to=5, sampled=6)
    report(capsys, 8, "Mobius recurrence and Weisner sums, exhaustive r <= 5, sampled r = 6", res, t0)


def test_09_kostka_integrality(capsys):
    t0 = time.perf_counter()
    b = Budget(max_size=5, r=2)
    res = verify.suite_kostka_integrality(b)
    pos = verify.suite_kostka_positivity(b)
    report(capsys, 9, f"Kostka entries integral, r <= 2, size <= 5 "
                      f"[positivity (conjecture) {'holds' if pos.passed else 'VIOLATED'} on {pos.checked} cases]",
           res, t0)


def test_10_pinned_values(capsys):
    t0 = time.perf_counter()
    checks = []
    k2 = multivariate_kostka([P((2,))])
    checks.append((k2[P((1, 1))] == q, "K_(11);(2) = q"))
    checks.append((k2[P((2,))] == 1, "K_(2);(2) = 1"))
    k11 = multivariate_kostka([P((1,)), P((1,))])
    checks.append((k11[P((1, 1))] == 1, "K_(11);(1),(1) = 1"))
    checks.append((k11[P((2,))] == 0, "K_(2);(1),(1) = 0"))
    want = SymFunc.m(1).scale(1 - t) - SymFunc.single(Basis.MONOMIAL, EMPTY, 1 - t * t)
    checks.append((interp(P((1,)), 2) == want, "interp_(1), N=2 = (1-t) m1 - (1-t^2)"))
    bad = [line for ok, line in checks if not ok]
    res = SuiteResult("pinned", not bad, len(checks), counterexample=bad[0] if bad else "")
    report(capsys, 10, "pinned values", res, t0)
