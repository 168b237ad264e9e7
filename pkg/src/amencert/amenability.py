"""Per-base consistency systems and their exact decision.

For a base structure B, a probability assignment on the expansions of B is
consistent when, for every substructure A, every expansion x of A and every
pair of embeddings of A into B, the two restriction fibers of x carry equal
mass.  The differences of fiber indicator vectors generate a rational
equality system; the alternative engine either produces strictly positive
consistent weights or a rational combination of generators whose realization
is nonnegative and nonzero.  The latter is a standalone obstruction
certificate: it re-verifies from the generator specifications alone, against
an independently rebuilt enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expansions import ClassPlugin, Expansion, fiber_partition
from .stiemke import Dual, Primal, stiemke_solve
from .structures import (
    Embedding,
    Structure,
    enumerate_embeddings,
    is_embedding,
    substructure_reps,
)


class BaseOutsideClassError(ValueError):
    """The base structure admits no expansion at all."""


class MalformedCertificateError(ValueError):
    """A certificate references data that does not exist: a bad embedding, an
    inadmissible expansion, or mismatched structures."""


@dataclass(frozen=True)
class GeneratorSpec:
    """One consistency generator: expansion x of A, compared along two
    distinct embeddings of A into the base."""

    A: Structure
    x: Expansion
    pi1: Embedding
    pi2: Embedding

    def realize(self, plugin: ClassPlugin) -> dict[Expansion, Fraction]:
        """Fiber difference as a sparse vector over expansions of the base,
        recomputed from scratch."""
        B = self.pi1.target
        coeffs: dict[Expansion, Fraction] = {}
        for e in plugin.expansions_of(B):
            if plugin.restrict(e, self.pi1) == self.x:
                coeffs[e] = coeffs.get(e, Fraction(0)) + 1
            if plugin.restrict(e, self.pi2) == self.x:
                coeffs[e] = coeffs.get(e, Fraction(0)) - 1
        return {e: c for e, c in coeffs.items() if c}


@dataclass(frozen=True)
class OmegaVector:
    """A sparse rational vector over the expansions of one base."""

    base: Structure
    coeffs: dict[Expansion, Fraction]

    def __init__(self, base, coeffs):
        object.__setattr__(self, "base", base)
        object.__setattr__(
            self, "coeffs", {e: Fraction(c) for e, c in coeffs.items() if Fraction(c) != 0}
        )

    def is_nonnegative_nonzero(self) -> bool:
        return bool(self.coeffs) and all(c > 0 for c in self.coeffs.values())


@dataclass(frozen=True)
class ConsistencySystem:
    """The assembled equality system for one base.

    `rows` is a spanning, duplicate-free selection of realized generators
    (zero rows dropped, exact duplicates collapsed, rows dependent on earlier
    ones skipped); each row is aligned with `generators`.  Dropping dependent
    rows preserves both the solution set of the equality system and the
    existence of a certificate, and keeps the solve desk-sized.
    """

    base: Structure
    plugin_name: str
    columns: tuple[Expansion, ...]
    rows: tuple[tuple[int, ...], ...]
    generators: tuple[GeneratorSpec, ...]
    n_enumerated: int
    n_zero: int
    n_duplicate: int
    n_dependent: int


@dataclass(frozen=True)
class ConsistentMeasure:
    """Strictly positive weights summing to one with equal fiber masses for
    every generator over this base.  Evidence for this base only."""

    base: Structure
    plugin_name: str
    weights: dict[Expansion, Fraction]


@dataclass(frozen=True)
class Certificate:
    """A rational generator combination realizing a nonnegative, nonzero
    vector; verifiable without trusting the system that produced it."""

    base: Structure
    plugin_name: str
    combination: tuple[tuple[GeneratorSpec, Fraction], ...]
    realized: OmegaVector


@dataclass(frozen=True)
class NoObstructionReport:
    """Every base in the ladder carried a consistent measure.  This does NOT
    prove amenability: consistency of finitely many bases never certifies the
    limit group."""

    measures: tuple[tuple[Structure, ConsistentMeasure], ...]
    note: str = (
        "every base admitted a consistent measure; this does not prove "
        "amenability, it only fails to refute it on the given ladder"
    )


def _reduce_against(row: list[Fraction], rref: list[tuple[int, list[Fraction]]]) -> list[Fraction]:
    for piv, base_row in rref:
        f = row[piv]
        if f:
            row = [a - f * b for a, b in zip(row, base_row)]
    return row


def build_consistency_system(B: Structure, plugin: ClassPlugin) -> ConsistencySystem:
    """Assemble the equality system for base B.

    Generators run over substructure representatives A, expansions x of A and
    unordered pairs of distinct embeddings A -> B, in deterministic order.
    """
    if not plugin.accepts(B):
        raise TypeError(f"class {plugin.name!r} does not handle this structure kind")
    exps = plugin.expansions_of(B)
    if not exps:
        raise BaseOutsideClassError(
            f"base admits no {plugin.name} expansion; it lies outside the class"
        )
    col = {e: i for i, e in enumerate(exps)}
    ncols = len(exps)

    kept_rows: list[tuple[int, ...]] = []
    kept_gens: list[GeneratorSpec] = []
    seen: set[frozenset] = set()
    rref: list[tuple[int, list[Fraction]]] = []
    n_enum = n_zero = n_dup = n_dep = 0

    for rep in substructure_reps(B):
        A = rep.structure
        embs = enumerate_embeddings(A, B)
        if len(embs) < 2:
            continue
        parts = [
            {x: [col[e] for e in bucket] for x, bucket in fiber_partition(plugin, B, pi).items()}
            for pi in embs
        ]
        for x in plugin.expansions_of(A):
            for (i1, pi1), (i2, pi2) in _embedding_pairs(embs):
                n_enum += 1
                sparse: dict[int, int] = {}
                for j in parts[i1].get(x, ()):
                    sparse[j] = sparse.get(j, 0) + 1
                for j in parts[i2].get(x, ()):
                    sparse[j] = sparse.get(j, 0) - 1
                sparse = {j: c for j, c in sparse.items() if c}
                if not sparse:
                    n_zero += 1
                    continue
                key = frozenset(sparse.items())
                if key in seen:
                    n_dup += 1
                    continue
                seen.add(key)
                dense = [Fraction(0)] * ncols
                for j, c in sparse.items():
                    dense[j] = Fraction(c)
                reduced = _reduce_against(dense, rref)
                piv = next((j for j, a in enumerate(reduced) if a), None)
                if piv is None:
                    n_dep += 1
                    continue
                inv = 1 / reduced[piv]
                rref.append((piv, [a * inv for a in reduced]))
                row = tuple(sparse.get(j, 0) for j in range(ncols))
                kept_rows.append(row)
                kept_gens.append(GeneratorSpec(A, x, pi1, pi2))

    return ConsistencySystem(
        base=B,
        plugin_name=plugin.name,
        columns=exps,
        rows=tuple(kept_rows),
        generators=tuple(kept_gens),
        n_enumerated=n_enum,
        n_zero=n_zero,
        n_duplicate=n_dup,
        n_dependent=n_dep,
    )


def _embedding_pairs(embs):
    for i1 in range(len(embs)):
        for i2 in range(i1 + 1, len(embs)):
            yield (i1, embs[i1]), (i2, embs[i2])


def measure_is_consistent(B: Structure, plugin: ClassPlugin, weights: dict[Expansion, Fraction]) -> bool:
    """Check the full generator family at once: along every embedding of every
    substructure representative, the restriction fibers must carry masses that
    do not depend on the embedding."""
    for rep in substructure_reps(B):
        A = rep.structure
        sums_by_emb = []
        for pi in enumerate_embeddings(A, B):
            part = fiber_partition(plugin, B, pi)
            sums_by_emb.append({x: sum(weights[e] for e in bucket) for x, bucket in part.items()})
        if any(s != sums_by_emb[0] for s in sums_by_emb[1:]):
            return False
    return True


def decide_base(B: Structure, plugin: ClassPlugin) -> ConsistentMeasure | Certificate:
    """Decide one base exactly: a consistent measure or an obstruction
    certificate, each re-verified before being returned."""
    system = build_consistency_system(B, plugin)
    outcome = stiemke_solve(system.rows, ncols=len(system.columns))
    if isinstance(outcome, Primal):
        total = sum(outcome.x)
        weights = {e: v / total for e, v in zip(system.columns, outcome.x)}
        assert all(w > 0 for w in weights.values()) and sum(weights.values()) == 1
        assert measure_is_consistent(B, plugin, weights)
        return ConsistentMeasure(base=B, plugin_name=plugin.name, weights=weights)
    assert isinstance(outcome, Dual)
    combination = tuple(
        (gen, y) for gen, y in zip(system.generators, outcome.y) if y != 0
    )
    cert = Certificate(
        base=B,
        plugin_name=plugin.name,
        combination=combination,
        realized=_realize_combination(B, plugin, combination),
    )
    assert verify_certificate(cert, plugin)
    return cert


def _realize_combination(B, plugin, combination) -> OmegaVector:
    coeffs: dict[Expansion, Fraction] = {}
    for gen, y in combination:
        for e, c in gen.realize(plugin).items():
            coeffs[e] = coeffs.get(e, Fraction(0)) + y * c
    return OmegaVector(B, coeffs)


def verify_certificate(cert: Certificate, plugin: ClassPlugin) -> bool:
    """Recompute every generator realization from scratch and check the sign
    condition on the combination.  Raises MalformedCertificateError when the
    certificate references impossible data."""
    B = cert.base
    if not plugin.accepts(B):
        raise MalformedCertificateError("certificate base does not fit the expansion class")
    if not plugin.expansions_of(B):
        raise MalformedCertificateError("base admits no expansion")
    for gen, _coeff in cert.combination:
        if gen.pi1.target != B or gen.pi2.target != B:
            raise MalformedCertificateError("generator embeddings do not target the base")
        if gen.pi1.source != gen.A or gen.pi2.source != gen.A:
            raise MalformedCertificateError("generator embeddings do not start at A")
        if gen.x.base != gen.A:
            raise MalformedCertificateError("generator expansion does not live on A")
        if gen.pi1 == gen.pi2:
            raise MalformedCertificateError("generator embeddings must be distinct")
        try:
            ok1 = is_embedding(gen.pi1, gen.A, B)
            ok2 = is_embedding(gen.pi2, gen.A, B)
        except TypeError as exc:
            raise MalformedCertificateError(str(exc)) from exc
        if not (ok1 and ok2):
            raise MalformedCertificateError("generator map is not an embedding")
        if gen.x.payload not in plugin.expansion_set(gen.A):
            raise MalformedCertificateError("generator expansion is not admissible")
    realized = _realize_combination(B, plugin, cert.combination)
    return realized.is_nonnegative_nonzero()


def search_obstruction(plugin: ClassPlugin, bases: list[Structure]) -> Certificate | NoObstructionReport:
    """Walk a ladder of bases; return the first certificate found, else the
    full list of per-base measures.  Errors name the offending base."""
    if not bases:
        raise ValueError("the base ladder must be nonempty")
    measures = []
    for B in bases:
        try:
            outcome = decide_base(B, plugin)
        except BaseOutsideClassError as exc:
            raise BaseOutsideClassError(f"base {B!r}: {exc}") from exc
        if isinstance(outcome, Certificate):
            return outcome
        measures.append((B, outcome))
    return NoObstructionReport(measures=tuple(measures))
