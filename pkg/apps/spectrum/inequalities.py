"""
Instance-by-instance verification of the root inequalities behind the
systole and second-minimum results, plus the family, ZRL and rome suites.

Every check is an exact comparison; a failure or an undecided comparison is
recorded in the report, never raised.
"""
import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import List

from django.db import models

from apps.core.exceptions import HypsysError, OutOfRangeError
from apps.matrices.closed_forms import V_nk, V_nKl_odd
from apps.matrices.rome import rome_charpoly
from apps.matrices.transition import RauzyPath, path_matrix
from apps.permutations.words import k_max, l_max
from apps.polynomials.families import (
    family_P_nk,
    family_P_nKl_even,
    family_P_nKl_odd,
    family_root,
    reduce_pair,
)
from apps.polynomials.polynomial import IntPolynomial
from apps.polynomials.roots import (
    DEFAULT_PRECISION_BITS,
    DEFAULT_WIDTH,
    Comparison,
    RootEnclosure,
    compare_roots,
    perron_root,
)
from apps.suspensions.zrl import (
    is_normalized,
    random_admissible_path,
    transitions,
    zrl_coding_successors,
    zrl_normalize,
    zrl_step,
)

logger = logging.getLogger(__name__)

X_PLUS_1 = IntPolynomial((1, 1))
SQRT_3 = IntPolynomial((-3, 0, 1))
FOURTH_ROOT_6 = IntPolynomial((-6, 0, 0, 0, 1))


class Suite(models.TextChoices):
    LEMMAS = 'lemmas', 'root inequalities'
    FAMILIES = 'families', 'closed forms and primitivity'
    ZRL = 'zrl', 'ZRL normalization'
    ROME = 'rome', 'rome charpoly'


@dataclass
class Check:
    suite: str
    statement: str
    instance: str
    passed: bool
    detail: str = ''

    def as_dict(self):
        return {
            'suite': self.suite,
            'statement': self.statement,
            'instance': self.instance,
            'passed': self.passed,
            'detail': self.detail,
        }

    def __str__(self):
        status = 'PASS' if self.passed else 'FAIL'
        detail = f"  ({self.detail})" if self.detail else ''
        return f"{status}  {self.suite}/{self.statement}: {self.instance}{detail}"


@dataclass
class InequalityReport:
    n_max: int
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def counts(self):
        """(statement -> (passed, total)), in first-seen order"""
        counts = {}
        for check in self.checks:
            key = f"{check.suite}/{check.statement}"
            passed, total = counts.get(key, (0, 0))
            counts[key] = (passed + check.passed, total + 1)
        return counts

    def of(self, statement):
        return [check for check in self.checks if check.statement == statement]

    def as_dict(self):
        return {
            'n_max': self.n_max,
            'passed': self.passed,
            'counts': {key: {'passed': p, 'total': t} for key, (p, t) in self.counts().items()},
            'checks': [check.as_dict() for check in self.checks],
        }


class _Verifier:
    def __init__(self, n_max, width, precision_bits):
        self.n_max = n_max
        self.width = width
        self.precision_bits = precision_bits
        self.report = InequalityReport(n_max)
        self.theta_path = lru_cache(maxsize=None)(self._theta_path)

    # ----- roots -----

    def theta(self, n, k=None, l=None):
        return family_root(n, k, l, self.width)

    def _theta_path(self, n, k, l):
        return perron_root(path_matrix(RauzyPath.gamma(n, k, l), 'symmetric').charpoly(), self.width)

    # ----- recording -----

    def record(self, suite, statement, instance, passed, detail=''):
        check = Check(suite, statement, instance, bool(passed), detail)
        self.report.checks.append(check)
        if not check.passed:
            logger.warning("%s", check)
        return check

    def greater(self, statement, instance, larger, smaller):
        """Strict larger > smaller between two enclosures"""
        try:
            order = compare_roots(larger, smaller, self.precision_bits)
        except HypsysError as exc:
            return self.record(Suite.LEMMAS, statement, instance, False, str(exc))
        return self.record(Suite.LEMMAS, statement, instance, order == Comparison.GREATER,
                           '' if order == Comparison.GREATER else f"found {order.label}")

    def attempt(self, suite, statement, instance, check):
        """Run ``check`` (a callable returning bool), domain errors fail the instance"""
        try:
            return self.record(suite, statement, instance, check())
        except HypsysError as exc:
            return self.record(suite, statement, instance, False, f"{type(exc).__name__}: {exc}")

    # ----- lemmas -----

    def decreasing(self):
        for n in range(4, self.n_max - 1, 2):
            self.greater('decreasing', f"theta_{{{n},K}} > theta_{{{n + 2},K}}",
                         self.theta(n), self.theta(n + 2))
        for n in range(5, self.n_max - 3, 4):
            self.greater('decreasing', f"theta_{{{n},K}} > theta_{{{n + 4},K}}",
                         self.theta(n), self.theta(n + 4))
        for n in range(7, self.n_max - 3, 4):
            self.greater('decreasing', f"theta_{{{n},K,L}} > theta_{{{n + 4},K,L}}",
                         self.theta(n, None, l_max(n)), self.theta(n + 4, None, l_max(n + 4)))

    def compare_n(self):
        for n in range(4, self.n_max + 1):
            coprime = [k for k in range(1, k_max(n) + 1) if gcd(n - 1, k) == 1]
            for i, k in enumerate(coprime):
                for k2 in coprime[i + 1:]:
                    self.greater('compare-n', f"theta_{{{n},{k}}} > theta_{{{n},{k2}}}",
                                 self.theta(n, k), self.theta(n, k2))

    def _delta(self, statement, n, l, power, minimum, exact=False):
        matrix = path_matrix(RauzyPath.gamma(n, k_max(n), l), 'symmetric')
        delta = (matrix ** power).min_column_sum()
        relation, holds = ('=', delta == minimum) if exact else ('>=', delta >= minimum)
        self.record(Suite.LEMMAS, statement,
                    f"delta(V(gamma_{{{n},K,{l}}})^{power}) {relation} {minimum}",
                    holds, f"delta = {delta}")

    def comparing_matrix(self):
        two = RootEnclosure.rational(2)
        sqrt3, root6 = perron_root(SQRT_3, self.width), perron_root(FOURTH_ROOT_6, self.width)
        for n in range(7, self.n_max + 1, 4):
            l = l_max(n) + 2
            self._delta('comparing-matrix', n, l, 2, 4)
            self.greater('comparing-matrix', f"theta_{{{n},K,L+2}} > 2",
                         self.theta_path(n, k_max(n), l), two)
        for n in range(4, self.n_max + 1, 2):
            self.greater('comparing-matrix', f"theta_{{{n},K,L+1}} > sqrt(3)",
                         self.theta_path(n, k_max(n), l_max(n) + 1), sqrt3)
            if n >= 6:
                l = l_max(n) + 2
                self._delta('comparing-matrix', n, l, 4, 6, exact=True)
                self.greater('comparing-matrix', f"theta_{{{n},K,L+2}} > 6^(1/4)",
                             self.theta_path(n, k_max(n), l), root6)

    def l_odd(self):
        for n in range(7, self.n_max + 1, 4):
            odd = range(1, l_max(n) + 1, 2)
            for l in odd:
                for l2 in odd:
                    if l < l2:
                        self.greater('l-odd', f"theta_{{{n},K,{l}}} > theta_{{{n},K,{l2}}}",
                                     self.theta(n, None, l), self.theta(n, None, l2))

    def even_nK2(self):
        for n in range(4, self.n_max + 1, 2):
            for l in range(1, l_max(n) + 1):
                for l2 in range(l + 1, l_max(n) + 1):
                    self.greater('even-nK2', f"theta_{{{n},K,{l}}} > theta_{{{n},K,{l2}}}",
                                 self.theta(n, None, l), self.theta(n, None, l2))

    def three_mod_four(self):
        for n in range(7, self.n_max + 1, 4):
            systole = self.theta(n, None, l_max(n))
            half = (n + 1) // 2
            self.greater('3mod4', f"theta_{{{half},K,L}} > theta_{{{n},K,L}}",
                         self.theta(half, None, l_max(half)), systole)
            self.greater('3mod4', f"theta_{{{half},K,L+2}} > theta_{{{n},K,L}}",
                         self.theta_path(half, k_max(half), l_max(half) + 2), systole)
            for k in range(1, k_max(n)):
                reduced = reduce_pair(n, k)
                self.greater('3mod4', f"theta_{{{reduced[0]},{reduced[1]}}} > theta_{{{n},K,L}}",
                             self.theta(n, k), systole)

    def second(self):
        for n in range(18, self.n_max + 1, 2):
            if n % 6 == 4:
                continue
            K = k_max(n)
            self.record(Suite.LEMMAS, 'second', f"gcd({n - 1}, {K - 1}) = 1", gcd(n - 1, K - 1) == 1)
            second = self.theta(n, K - 1)
            for k in range(1, K - 1):
                self.greater('second', f"theta_{{{n},{k}}} > theta_{{{n},K-1}}", self.theta(n, k), second)
            for l in range(1, l_max(n) + 1):
                self.greater('second', f"theta_{{{n},K,{l}}} > theta_{{{n},K-1}}",
                             self.theta(n, None, l), second)
            for extra in (1, 2):
                self.greater('second', f"theta_{{{n},K,L+{extra}}} > theta_{{{n},K-1}}",
                             self.theta_path(n, K, l_max(n) + extra), second)

    def one_mod_four(self):
        for n in range(5, self.n_max + 1, 4):
            systole = self.theta(n)
            for k in range(1, k_max(n)):
                reduced = reduce_pair(n, k)
                self.greater('1mod4', f"theta_{{{reduced[0]},{reduced[1]}}} > theta_{{{n},K}}",
                             self.theta(n, k), systole)

    def lemmas(self):
        self.decreasing()
        self.compare_n()
        self.comparing_matrix()
        self.l_odd()
        self.even_nK2()
        self.three_mod_four()
        self.second()
        self.one_mod_four()

    # ----- closed forms -----

    def _charpoly(self, n, k, l=None):
        return path_matrix(RauzyPath.gamma(n, k, l)).charpoly()

    def families(self):
        suite = Suite.FAMILIES
        for n in range(4, self.n_max + 1):
            K = k_max(n)
            for k in range(1, K + 1):
                if gcd(n - 1, k) == 1:
                    self.attempt(suite, 'P_nk', f"(X+1) chi(gamma_{{{n},{k}}}) = P_{{{n},{k}}}",
                                 lambda: X_PLUS_1 * self._charpoly(n, k) == family_P_nk(n, k))
            self.attempt(suite, 'primitivity', f"V(gamma_{{{n},K}}) primitive iff n != 3 mod 4",
                         lambda: path_matrix(RauzyPath.gamma(n, K)).is_primitive() == (n % 4 != 3))
            if n % 2 == 0:
                for l in range(1, l_max(n) + 1):
                    self.attempt(suite, 'P_nKl_even', f"(X+1) chi(gamma_{{{n},K,{l}}}) = P_{{{n},K,{l}}}",
                                 lambda: X_PLUS_1 * self._charpoly(n, K, l) == family_P_nKl_even(n, l))
            if n % 4 == 3 and n >= 7:
                for l in range(1, l_max(n) + 1):
                    self.attempt(suite, 'primitivity', f"V(gamma_{{{n},K,{l}}}) primitive iff l odd",
                                 lambda: path_matrix(RauzyPath.gamma(n, K, l)).is_primitive() == (l % 2 == 1))
                    if l % 2:
                        self.attempt(suite, 'P_nKl_odd', f"(X+1) chi(gamma_{{{n},K,{l}}}) = P_{{{n},K,{l}}}",
                                     lambda: X_PLUS_1 * self._charpoly(n, K, l) == family_P_nKl_odd(n, l))

    def rome(self):
        suite = Suite.ROME
        for n in range(4, self.n_max + 1):
            for k in range(1, k_max(n) + 1):
                if gcd(n - 1, k) == 1:
                    matrix = V_nk(n, k)
                    self.attempt(suite, 'rome-V_nk', f"R = {{1,{n}}} on V_{{{n},{k}}}",
                                 lambda: rome_charpoly(matrix, [1, n]) == matrix.charpoly())
            if n % 4 == 3 and n >= 7:
                m = k_max(n) + 1
                for l in range(1, l_max(n) + 1, 2):
                    matrix = V_nKl_odd(n, l)
                    self.attempt(suite, 'rome-odd', f"R = {{{n},{n - 1},{m}}} on V_{{{n},K,{l}}}",
                                 lambda: rome_charpoly(matrix, [n, n - 1, m]) == matrix.charpoly())

    # ----- ZRL -----

    def _zrl_orbit(self, path):
        orbit = zrl_normalize(path, precision_bits=self.precision_bits)
        if not is_normalized(orbit.path):
            return False
        same = compare_roots(
            perron_root(path_matrix(path, 'symmetric').charpoly()),
            perron_root(path_matrix(orbit.path, 'symmetric').charpoly()),
            self.precision_bits,
        )
        if same != Comparison.EQUAL:
            return False
        return all(
            after in zrl_coding_successors(before)
            for before, after in transitions(orbit) if len(before) >= 4
        )

    def zrl(self, samples, seed):
        suite = Suite.ZRL
        rng = random.Random(seed)
        for n in range(6, min(self.n_max, 7) + 1):
            for index in range(samples):
                path = random_admissible_path(n, rng)
                if path is None:
                    self.record(suite, 'normalize', f"n={n} sample {index}", False, 'no admissible path drawn')
                    continue
                self.attempt(suite, 'normalize', f"n={n} {path.start} [{path.word}]",
                             lambda path=path: self._zrl_orbit(path))
            for k in range(1, k_max(n) + 1):
                gamma = RauzyPath.gamma(n, k)
                matrix = path_matrix(gamma, 'symmetric')
                if not gamma.is_pure() or not matrix.is_primitive():
                    continue
                self.attempt(suite, 'fixed-point', f"gamma_{{{n},{k}}} start is fixed",
                             lambda gamma=gamma: zrl_step(gamma, precision_bits=self.precision_bits)[0]
                             .path.start.reduced() == gamma.start.reduced())


def verify_inequalities(n_max, suites=None, samples=20, seed=0,
                        width=DEFAULT_WIDTH, precision_bits=DEFAULT_PRECISION_BITS) -> InequalityReport:
    """
    Check every instance up to ``n_max`` of the requested suites (all of
    them by default). Failures are report content.
    """
    if n_max < 7:
        raise OutOfRangeError(f"verification needs n_max >= 7, got {n_max}")
    suites = [Suite(suite) for suite in (suites or Suite.values)]
    verifier = _Verifier(n_max, width, precision_bits)
    for suite in suites:
        logger.info("verifying %s up to n=%d", suite.label, n_max)
        if suite == Suite.ZRL:
            verifier.zrl(samples, seed)
        else:
            getattr(verifier, suite.value)()
    report = verifier.report
    logger.info("%d checks, %d failures", len(report.checks), len(report.failures()))
    return report
