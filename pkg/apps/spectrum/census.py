"""
Spectrum census on top of the search: distinct dilatations below a bound,
the systole, the second minimum and the per-genus count table.

Entries are distinct as real numbers: two candidates share an entry when
compare_roots finds their Perron roots equal, whatever their paths.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from apps.core.exceptions import InternalInconsistencyError, OutOfRangeError
from apps.permutations.words import k_max
from apps.polynomials.families import family_root, second_polynomial, systole_polynomial
from apps.polynomials.polynomial import IntPolynomial
from apps.polynomials.roots import (
    DEFAULT_PRECISION_BITS,
    DEFAULT_WIDTH,
    Comparison,
    RootEnclosure,
    compare_roots,
    dedup_roots,
    perron_root,
)
from apps.suspensions.eigen import path_eigen_data

from .search import COMPLETENESS_BOUND, Candidate, SearchConfig, SearchResult, enumerate_admissible

logger = logging.getLogger(__name__)

# bound = predicted root + margin when the target value is known in advance
MARGIN = Fraction(1, 10 ** 9)


def genus(n):
    return n // 2


def stratum(n):
    if n % 2 == 0:
        return f"H({n - 2})"
    zeros = (n - 3) // 2
    return f"H({zeros},{zeros})"


@dataclass
class CensusEntry:
    n: int
    enclosure: RootEnclosure
    candidate: Candidate
    rank: int = 0

    @property
    def defining(self) -> IntPolynomial:
        return self.enclosure.defining

    @property
    def polynomial(self) -> IntPolynomial:
        return self.candidate.polynomial

    @property
    def k(self):
        return self.candidate.k

    @property
    def word(self):
        return self.candidate.word

    @property
    def digest(self):
        return self.candidate.matrix.digest

    def path(self):
        return self.candidate.path()

    def as_dict(self, width=DEFAULT_WIDTH, digits=14):
        display = self.enclosure.refine(width)
        return {
            'n': self.n,
            'genus': genus(self.n),
            'stratum': stratum(self.n),
            'rank': self.rank,
            'coefficients': list(self.defining.coeffs),
            'root': display.decimal(digits),
            'root_lo': str(display.lo),
            'root_hi': str(display.hi),
            'log_root': display.log_decimal(digits),
            'representative': {'k': self.k, 'word': self.word},
            'digest': self.digest,
        }


@dataclass
class Spectrum:
    search: SearchResult
    entries: List[CensusEntry] = field(default_factory=list)

    @property
    def n(self):
        return self.search.config.n

    @property
    def bound(self):
        return self.search.config.bound

    @property
    def complete(self):
        return self.search.complete

    @property
    def warnings(self):
        return self.search.warnings

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def as_dict(self, width=DEFAULT_WIDTH):
        return [entry.as_dict(width) for entry in self.entries]


def spectrum(config: SearchConfig, precision_bits=DEFAULT_PRECISION_BITS) -> Spectrum:
    """Distinct dilatations below config.bound, ascending"""
    search = enumerate_admissible(config)
    representatives = {}
    for candidate in search.candidates:
        representatives.setdefault(candidate.coefficients, candidate)
    entries = [
        CensusEntry(config.n, perron_root(candidate.polynomial, config.width), candidate)
        for candidate in representatives.values()
    ]
    entries = dedup_roots(entries, key=lambda entry: entry.enclosure, precision_bits=precision_bits)
    for rank, entry in enumerate(entries, start=1):
        entry.rank = rank
    logger.info(
        "n=%d bound=%s: %d candidates, %d polynomials, %d distinct roots%s",
        config.n, config.bound, len(search.candidates), len(representatives), len(entries),
        '' if search.complete else ' (incomplete)',
    )
    return Spectrum(search, entries)


def check_symmetric_construction(result, precision_bits=DEFAULT_PRECISION_BITS):
    """
    Weak suspension datum for every emitted path: lambda positive and a
    sign of tau with nonempty height interval. Raises ConstructionError on
    the first violation; returns the number of paths checked.
    """
    search = result.search if isinstance(result, Spectrum) else result
    for candidate in search.candidates:
        path_eigen_data(candidate.path(), 'symmetric', precision_bits)
    logger.info("symmetric construction verified on %d paths", len(search.candidates))
    return len(search.candidates)


@dataclass
class Extremum:
    """A census minimum together with its closed-form prediction"""
    entry: Optional[CensusEntry]
    predicted: RootEnclosure
    spectrum: Spectrum
    realizing_paths: int = 0

    @property
    def complete(self):
        return self.spectrum.complete

    @property
    def polynomial(self):
        return self.predicted.defining


def _config(n, bound, config):
    if config is None:
        return SearchConfig(n=n, bound=bound)
    return SearchConfig(
        n=n, bound=bound, max_depth=config.max_depth, width=config.width,
        threads=config.threads, time_budget=config.time_budget,
    )


def _predicted_bound(predicted):
    return min(predicted.hi + MARGIN, COMPLETENESS_BOUND)


def _realizing(census, entry, precision_bits):
    return sum(
        1 for candidate in census.search.candidates
        if compare_roots(perron_root(candidate.polynomial, census.search.config.width),
                         entry.enclosure, precision_bits) == Comparison.EQUAL
    )


def _assert_equal(found, expected, what, precision_bits):
    if compare_roots(found, expected, precision_bits) != Comparison.EQUAL:
        raise InternalInconsistencyError(
            f"{what}: census root {found} differs from the closed form {expected}",
            found=found.as_dict(), expected=expected.as_dict(),
        )


def systole(n, config=None, precision_bits=DEFAULT_PRECISION_BITS) -> Extremum:
    """
    Least dilatation of the component, searched just above the closed-form
    value and cross-checked against it. An incomplete search with no entry
    returns an Extremum whose entry is None.
    """
    width = config.width if config is not None else DEFAULT_WIDTH
    predicted = perron_root(systole_polynomial(n), width)
    census = spectrum(_config(n, _predicted_bound(predicted), config), precision_bits)
    if not census.entries:
        if census.complete:
            raise InternalInconsistencyError(f"n={n}: no admissible path below the predicted systole")
        return Extremum(None, predicted, census)
    entry = census.entries[0]
    _assert_equal(entry.enclosure, predicted, f"systole n={n}", precision_bits)
    return Extremum(entry, predicted, census, _realizing(census, entry, precision_bits))


def second_length(n, config=None, precision_bits=DEFAULT_PRECISION_BITS) -> Extremum:
    """Second least dilatation for even n >= 18, n != 4 mod 6"""
    width = config.width if config is not None else DEFAULT_WIDTH
    predicted = perron_root(second_polynomial(n), width)
    census = spectrum(_config(n, _predicted_bound(predicted), config), precision_bits)
    if len(census.entries) < 2:
        if census.complete:
            raise InternalInconsistencyError(
                f"n={n}: {len(census.entries)} distinct roots below the predicted second minimum"
            )
        return Extremum(None, predicted, census)
    _assert_equal(census.entries[0].enclosure, perron_root(systole_polynomial(n), width),
                  f"systole n={n}", precision_bits)
    entry = census.entries[1]
    _assert_equal(entry.enclosure, predicted, f"second minimum n={n}", precision_bits)
    _assert_equal(entry.enclosure, family_root(n, k_max(n) - 1, None, width),
                  f"theta_{{{n},K-1}}", precision_bits)
    return Extremum(entry, predicted, census, _realizing(census, entry, precision_bits))


@dataclass
class TableRow:
    g: int
    n: int
    count: int
    complete: bool
    systole: Optional[CensusEntry] = None

    def as_dict(self, width=DEFAULT_WIDTH):
        return {
            'genus': self.g,
            'n': self.n,
            'stratum': stratum(self.n),
            'count': self.count,
            'complete': self.complete,
            'systole': self.systole.as_dict(width)['root'] if self.systole else None,
        }


def theoremC_table(g_min, g_max, config=None, precision_bits=DEFAULT_PRECISION_BITS) -> List[TableRow]:
    """Number of distinct dilatations below 2 in H^hyp(2g-2), per genus"""
    if g_min < 2 or g_max < g_min:
        raise OutOfRangeError(f"genus range must satisfy 2 <= g_min <= g_max, got {g_min}..{g_max}")
    rows = []
    for g in range(g_min, g_max + 1):
        census = spectrum(_config(2 * g, COMPLETENESS_BOUND, config), precision_bits)
        rows.append(TableRow(
            g=g, n=2 * g, count=len(census), complete=census.complete,
            systole=census.entries[0] if census.entries else None,
        ))
        logger.info("g=%d: %d lengths%s", g, len(census), '' if census.complete else ' (incomplete)')
    return rows
