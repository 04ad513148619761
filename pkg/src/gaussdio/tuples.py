"""Diophantine tuple verification and the family {k-1, k+1, 16k^3-4k}."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import DegenerateK, GaussDioError, IndexBoundTooSmall
from .gint import GaussianInt, IntLike, exact_quotient, gi_sqrt, sorted_gints


class TupleError(GaussDioError):
    pass


class ContainsZero(TupleError):
    pass


class DuplicateElement(TupleError):
    pass


class NotSquare(TupleError):
    """elements[p]*elements[q] + 1 is not a square."""

    def __init__(self, pair, value):
        self.pair = pair
        self.value = value
        super().__init__(f"pair {pair}: {value} is not a square")


@dataclass(frozen=True)
class DioTuple:
    elements: tuple
    witnesses: dict = field(compare=False)

    def __eq__(self, other):
        # witness signs are immaterial
        if not isinstance(other, DioTuple):
            return NotImplemented
        return set(self.elements) == set(other.elements)

    def __hash__(self):
        return hash(frozenset(self.elements))

    def to_json(self) -> dict:
        return {
            "elements": [e.to_json() for e in self.elements],
            "witnesses": [{"pair": list(p), "root": w.to_json()}
                          for p, w in sorted(self.witnesses.items())],
        }


def verify_tuple(elements) -> DioTuple:
    """Check that every pairwise product plus one is a square in Z[i].

    Raises ContainsZero / DuplicateElement before any arithmetic, and
    NotSquare for the first failing pair in index order.
    """
    elems = tuple(GaussianInt.of(e) for e in elements)
    if any(not e for e in elems):
        raise ContainsZero("tuple contains zero")
    if len(set(elems)) != len(elems):
        raise DuplicateElement("tuple has repeated elements")
    witnesses = {}
    for p, q in combinations(range(len(elems)), 2):
        value = elems[p] * elems[q] + 1
        w = gi_sqrt(value)
        if w is None:
            raise NotSquare((p, q), value)
        witnesses[(p, q)] = w
    return DioTuple(elems, witnesses)


def is_dio_tuple(elements) -> bool:
    try:
        verify_tuple(elements)
    except TupleError:
        return False
    return True


@dataclass(frozen=True)
class FamilyTriple:
    k: GaussianInt
    a: GaussianInt
    b: GaussianInt
    c: GaussianInt
    r: GaussianInt
    s: GaussianInt
    t: GaussianInt

    def elements(self) -> tuple:
        return (self.a, self.b, self.c)

    def to_json(self) -> dict:
        return {name: getattr(self, name).to_json() for name in ("k", "a", "b", "c", "r", "s", "t")}


def check_k(k: IntLike) -> GaussianInt:
    k = GaussianInt.of(k)
    if k in (GaussianInt(0), GaussianInt(1), GaussianInt(-1)):
        raise DegenerateK(f"k={k} makes an element of the triple zero")
    return k


def family_triple(k: IntLike) -> FamilyTriple:
    k = check_k(k)
    a, b = k - 1, k + 1
    c = 16 * k**3 - 4 * k
    r = k
    s = 4 * k**2 - 2 * k - 1
    t = 4 * k**2 + 2 * k - 1
    # formulas are identities; re-derive the roots independently anyway
    for value, root in ((a * b + 1, r), (a * c + 1, s), (b * c + 1, t)):
        w = gi_sqrt(value)
        if w is None or w != root.principal():
            raise AssertionError(f"family identity failed at k={k}")
    return FamilyTriple(k, a, b, c, r, s, t)


def known_extensions(k: IntLike) -> list[GaussianInt]:
    k = check_k(k)
    fam = family_triple(k)
    ds = [4 * k, 64 * k**5 - 48 * k**3 + 8 * k]
    for d in ds:
        verify_tuple(fam.elements() + (d,))
    return ds


@dataclass(frozen=True)
class Provenance:
    sequence: str
    index: int
    sign: str

    def to_json(self) -> dict:
        return {"sequence": self.sequence, "index": self.index, "sign": self.sign}


@dataclass(frozen=True)
class Extension:
    d: GaussianInt
    provenance: tuple

    def to_json(self) -> dict:
        return {"d": self.d.to_json(), "provenance": [p.to_json() for p in self.provenance]}


def candidate_xs(k: GaussianInt, index_bound: int):
    """Yield (label, index, x) for x = V_n and x = W_m^(j), indices <= index_bound."""
    from .pell import sequence_terms, v_spec, w_specs

    for n, x in enumerate(sequence_terms(v_spec(k), index_bound + 1)):
        yield "V", n, x
    for j, spec in enumerate(w_specs(k), start=1):
        for m, x in enumerate(sequence_terms(spec, index_bound + 1)):
            yield f"W{j}", m, x


def extend_search(k: IntLike, index_bound: int) -> list[Extension]:
    """Extensions d of the family triple reachable from the V and W sequences.

    The sign of x never matters since d = (x^2 - 1)/(k - 1); provenance
    therefore records "±".
    """
    k = check_k(k)
    if index_bound < 2:
        raise IndexBoundTooSmall("index_bound must be at least 2")
    fam = family_triple(k)
    base = fam.elements()
    found: dict[GaussianInt, list[Provenance]] = {}
    rejected: set[GaussianInt] = set()
    for label, idx, x in candidate_xs(k, index_bound):
        d = exact_quotient(x * x - 1, fam.a)
        if d is None or not d or d in base or d in rejected:
            continue
        if d not in found:
            if not is_dio_tuple(base + (d,)):
                rejected.add(d)
                continue
            found[d] = []
        found[d].append(Provenance(label, idx, "±"))
    return [Extension(d, tuple(found[d])) for d in sorted_gints(found)]


def extension_values(k: IntLike, index_bound: int) -> list[GaussianInt]:
    return [e.d for e in extend_search(k, index_bound)]
