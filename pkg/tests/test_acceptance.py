"""The ten acceptance criteria, each at its stated tolerance and time limit.

Every test appends one ``PASS``/``FAIL`` line that is printed in the pytest
terminal summary (and to stdout when run with ``-s``).
"""

import math
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

import oracles
from conftest import ACCEPTANCE_LINES
from udcp.bounds import main_bound, verify_ineq3, warmup_bound
from udcp.errors import EmptyWindowError
from udcp.core import (
    BinaryCode,
    CodePair,
    deficit_epsilon,
    distance_census,
    extract_dense_subcode,
    is_udcp,
    kasami_lin,
    projection_size,
    van_tilborg_cap,
)
from udcp.noise import (
    CorrelationSpec,
    RssBoundInputs,
    direct_joint_probability,
    exact_joint_probability,
    find_split,
    joint_log2_from_census,
    lemma6_upper,
    lemma7_lower,
    rsse_lower_bound,
)
from udcp.search import (
    SearchSpec,
    exhaustive_max_product,
    kasami_tower,
    random_udcp,
    unbalanced_frontier,
)


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.notes: list[str] = []
        self.failures: list[str] = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def check(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        self.check(elapsed < self.limit, f"runtime {elapsed:.2f}s over {self.limit}s")
        status = "FAIL" if self.failures else "PASS"
        detail = "; ".join(self.failures or self.notes)
        line = f"{status} criterion {self.number:2d} {self.title} [{elapsed:.2f}s] {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        if exc_type is None and self.failures:
            pytest.fail(line)
        return False


def _tuples(pair):
    return (
        [oracles.to_tuple(w, pair.n) for w in pair.a],
        [oracles.to_tuple(w, pair.n) for w in pair.b],
    )


def test_criterion_01_kasami_lin():
    with Criterion(1, "Kasami-Lin pair", 1.0) as c:
        pair = kasami_lin()
        total = pair.alpha + pair.beta
        c.check(is_udcp(pair), "pair not UD")
        c.check(oracles.sums_distinct(*_tuples(pair)), "oracle disagrees")
        c.check(abs(total - (math.log2(3) + 1) / 2) < 1e-9, f"rate {total}")
        c.check(abs(total - 1.2924812) < 1e-7, f"rate {total}")
        c.notes.append(f"alpha+beta={total:.10f}")


def test_criterion_02_warmup_constant():
    with Criterion(2, "warm-up constant", 1.0) as c:
        rep = warmup_bound(0.0, 0.3838)
        c.check(abs(rep.beta_bound - 0.4777) < 5e-5, f"bound {rep.beta_bound}")
        closed = oracles.warmup_closed_form(0.0, 0.3838)
        c.check(abs(rep.terms["fixed_point"] - closed) < 1e-9, "closed form disagrees")
        c.check(abs(rep.terms["cross_coefficient"] - 0.7676) < 1e-12, "2 rho term missing")
        c.notes.append(f"bound={rep.beta_bound:.8f} 2rho={rep.terms['cross_coefficient']}")


def test_criterion_03_main_constant():
    with Criterion(3, "main constant", 1.0) as c:
        rep = main_bound(0.0, 0.654)
        t = rep.terms
        c.check(abs(t["main_raw"] - 0.4228) < 5e-5, f"main {t['main_raw']}")
        c.check(abs(t["eq2_constant"] - 0.2861421) < 1e-6, f"c0 {t['eq2_constant']}")
        c.check(
            abs(t["eq2_lambda_coefficient"] - 0.2733156) < 1e-6,
            f"c_lam {t['eq2_lambda_coefficient']}",
        )
        at_half = 0.2861421 + 0.2733156 / 2
        c.check(abs(t["constant_at_half"] - at_half) < 1e-6, "linear form at 1/2")
        c.notes.append(
            f"main={t['main_raw']:.8f} c0={t['eq2_constant']:.7f} "
            f"c_lam={t['eq2_lambda_coefficient']:.7f}"
        )


def test_criterion_04_ineq3_certificate():
    with Criterion(4, "inequality certificate", 60.0) as c:
        cert = verify_ineq3(mode="interval", min_epsilon=1e-8, max_epsilon=0.01)
        c.check(cert.all_negative and cert.covers_domain, "not certified")
        c.check(cert.revalidate(), "pieces do not re-validate")
        for eps, expected in ((0.01, -3.4e-3), (1e-4, -1.23e-3)):
            value = float(oracles.ineq3_rhs_mp(mpmath.mpf(eps)))
            frozen = {0.01: -0.00336055828435663, 1e-4: -0.0012299920819088}[eps]
            c.check(abs(value - frozen) < 1e-12, f"oracle drift at {eps}")
            c.check(abs(value - expected) < 0.05 * abs(expected), f"R({eps})={value}")
        c.notes.append(f"{len(cert.pieces)} pieces, max upper {cert.max_upper_bound:.3e}")


def _census_direct(a, b, n):
    w = [0] * (n + 1)
    for x in a:
        for y in b:
            w[(x ^ y).bit_count()] += 1
    return w


def test_criterion_05_van_tilborg_suite():
    with Criterion(5, "van Tilborg suite", 300.0) as c:
        pairs = []
        for n in range(1, 5):
            pairs.append(exhaustive_max_product(SearchSpec(n)).witness)
            pairs.append(exhaustive_max_product(SearchSpec(n, symmetry_reduction=False)).witness)
        for n in (2, 3):
            pairs += [p.witness for p in unbalanced_frontier(SearchSpec(n, "max-b-given-a-floor", 1))]
        rng = np.random.default_rng(20240501)
        for _ in range(1000):
            pairs.append(random_udcp(int(rng.integers(1, 9)), rng))
        violations = 0
        for pair in pairs:
            n = pair.n
            c.check(oracles.sums_distinct(*_tuples(pair)), "non-UD pair")
            counts = _census_direct(pair.a, pair.b, n)
            violations += sum(
                1
                for d in range(n + 1)
                if counts[d] > math.comb(n, d) * 2 ** min(d, n - d) or counts[d] > van_tilborg_cap(n, d)
            )
        c.check(violations == 0, f"{violations} violations")
        c.notes.append(f"{len(pairs)} pairs, 0 violations")


def test_criterion_06_rsse_dominance():
    with Criterion(6, "RSSE dominance", 600.0) as c:
        rhos = [k / 10 for k in range(1, 10)]
        u = 3
        subsets = [BinaryCode(u, [w for w in range(8) if m >> w & 1]) for m in range(1, 256)]
        rates = [s.rate for s in subsets]
        violations = 0
        worst = math.inf
        for i, f in enumerate(subsets):
            for j, g in enumerate(subsets):
                census = distance_census(CodePair(f, g))
                for rho in rhos:
                    exact = joint_log2_from_census(census, rho)
                    bound = rsse_lower_bound(RssBoundInputs(u, rates[i], rates[j], rho))
                    gap = exact - bound
                    worst = min(worst, gap)
                    if gap < -1e-12:
                        violations += 1
        rng = np.random.default_rng(606)
        u = 10
        for _ in range(10_000):
            fs = int(rng.integers(1, 1 << u))
            gs = int(rng.integers(1, 1 << u))
            f = BinaryCode(u, rng.choice(1 << u, fs, replace=False).tolist())
            g = BinaryCode(u, rng.choice(1 << u, gs, replace=False).tolist())
            rho = float(rng.uniform(0.05, 0.95))
            exact = exact_joint_probability(CodePair(f, g), CorrelationSpec(u, rho)).exact_log2
            gap = exact - rsse_lower_bound(RssBoundInputs.from_sets(f, g, rho))
            worst = min(worst, gap)
            if gap < -1e-12:
                violations += 1
        c.check(violations == 0, f"{violations} violations")
        c.notes.append(f"255^2 x 9 + 10^4 instances, min log2 gap {worst:.3e}")


def test_criterion_07_exact_probability_identity():
    with Criterion(7, "exact-probability identity", 120.0) as c:
        rng = np.random.default_rng(707)
        worst = mp_worst = 0.0
        for k in range(1000):
            n = int(rng.integers(1, 11))
            a = BinaryCode(n, rng.choice(1 << n, int(rng.integers(1, min(1 << n, 40) + 1)), replace=False).tolist())
            b = BinaryCode(n, rng.choice(1 << n, int(rng.integers(1, min(1 << n, 40) + 1)), replace=False).tolist())
            rho = float(rng.uniform(0, 1))
            for l_set in (None, tuple(sorted(rng.choice(n, int(rng.integers(0, n + 1)), replace=False).tolist()))):
                spec = CorrelationSpec(n, rho, l_set)
                pair = CodePair(a, b)
                exact = exact_joint_probability(pair, spec).probability
                direct = direct_joint_probability(pair, spec)
                rel = abs(exact - direct) / direct
                worst = max(worst, rel)
                if k % 20 == 0:
                    # Independent high-precision oracle on a subsample.
                    mp = oracles.direct_probability(
                        [oracles.to_tuple(w, n) for w in a],
                        [oracles.to_tuple(w, n) for w in b],
                        rho,
                        l_set,
                    )
                    mp_worst = max(mp_worst, float(abs(exact - mp) / mp))
        c.check(worst <= 1e-12, f"max relative error {worst:.2e}")
        c.check(mp_worst <= 1e-12, f"mpmath oracle relative error {mp_worst:.2e}")
        c.notes.append(f"2000 evaluations, max rel err {worst:.2e} (mpmath {mp_worst:.2e})")


def test_criterion_08_search_optimum():
    with Criterion(8, "search optimum", 10.0) as c:
        for n, expected in ((1, 2), (2, 6)):
            point = exhaustive_max_product(SearchSpec(n))
            plain = exhaustive_max_product(SearchSpec(n, symmetry_reduction=False))
            brute = oracles.brute_max_product(n)
            c.check(point.optimal and plain.optimal, f"n={n} not proved")
            c.check(point.product == plain.product == brute == expected, f"n={n}: {point.product}")
            c.check(is_udcp(point.witness), f"n={n} witness")
        c.notes.append("n=1 -> 2, n=2 -> 6, enumeration agrees")


def _dense_by_enumeration(code, l_set, eps, n):
    # Both clauses compared in high precision, independent of the package check.
    mpmath.mp.dps = 50
    mask = sum(1 << i for i in l_set)
    classes = {}
    for w in code:
        classes[w & mask] = classes.get(w & mask, 0) + 1
    e = mpmath.mpf(eps.numerator) / eps.denominator
    proj_ok = len(classes) >= mpmath.power(2, len(l_set) - e * n - 1)
    class_ok = min(classes.values()) >= mpmath.power(2, n - len(l_set) - e * n - 1)
    return proj_ok and class_ok


def test_criterion_09_dense_extraction():
    with Criterion(9, "dense extraction", 60.0) as c:
        rng = np.random.default_rng(909)
        violations = 0
        for _ in range(100):
            n = int(rng.integers(4, 15))
            eps = Fraction(int(rng.integers(2, 31)), 100)
            mpmath.mp.dps = 50
            exponent = (1 - mpmath.mpf(eps.numerator) / eps.denominator) * n
            floor = int(mpmath.ceil(mpmath.power(2, exponent)))
            size = int(rng.integers(floor, min(1 << n, floor * 2) + 1))
            a = BinaryCode(n, rng.choice(1 << n, size, replace=False).tolist())
            l_set = sorted(rng.choice(n, int(rng.integers(1, n)), replace=False).tolist())
            rep = extract_dense_subcode(a, l_set, eps)
            ok = set(rep.subset) <= set(a) and _dense_by_enumeration(rep.subset, l_set, eps, n)
            violations += not ok
        c.check(violations == 0, f"{violations} violations")
        c.notes.append("100 instances, 0 violations")


def _battery():
    pairs = [kasami_tower(k) for k in range(1, 6)]
    pairs += [exhaustive_max_product(SearchSpec(n)).witness for n in range(1, 5)]
    for n in (2, 3):
        pairs += [p.witness for p in unbalanced_frontier(SearchSpec(n, "max-b-given-a-floor", 1))]
    rng = np.random.default_rng(5)
    pairs += [random_udcp(int(rng.integers(2, 11)), rng) for _ in range(40)]
    return pairs


def test_criterion_10_finite_n_sandwich():
    with Criterion(10, "finite-n sandwich", 300.0) as c:
        count = violations = 0
        low_margin = up_margin = math.inf
        for pair in _battery():
            n = pair.n
            eps = deficit_epsilon(len(pair.a), n)
            splits = {tuple(range(n // 2))}
            try:
                splits.add(tuple(find_split(pair).l_set))
            except EmptyWindowError:
                pass  # no admissible |L| at this length
            for l_set in sorted(splits):
                sub = extract_dense_subcode(pair.a, l_set, eps)
                dense = CodePair(sub.subset, pair.b)
                c.check(is_udcp(dense), "dense subpair lost unique decodability")
                lam = len(l_set) / n
                pi = math.log2(projection_size(pair.b, l_set)) / n
                for rho in (0.0, 0.3, 0.654, 0.9):
                    value = exact_joint_probability(dense, CorrelationSpec(n, rho, l_set)).exact_log2 / n
                    lo = lemma7_lower(lam, pi, eps, rho, n)
                    up = lemma6_upper(lam, eps, rho, n)
                    count += 1
                    low_margin = min(low_margin, value - lo)
                    up_margin = min(up_margin, up - value)
                    violations += not lo <= value <= up
        c.check(violations == 0, f"{violations} of {count} violate")
        c.notes.append(
            f"{count} instances, 0 violations, min margins {low_margin:.3f}/{up_margin:.3f}"
        )
