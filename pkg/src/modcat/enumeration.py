"""Deterministic enumeration of modules, morphisms, conflations, complexes.

Everything here is ordered and reproducible: module lists sort by
(order, rank, factors), matrix enumerations walk entries row-major, and
subgroup walks run over canonical Hermite-form bases, so two runs with
the same bounds always visit the same objects in the same order.

Subgroups of a module Y correspond to integer lattices between Y's
relation lattice and the full ambient lattice; those are enumerated as
reduced upper-triangular bases (pivots dividing Y's invariant factors,
entries above each pivot reduced mod the pivot) filtered by containment
of the relation lattice.  Each valid basis is its own Hermite normal
form, so distinct candidates are distinct subgroups and the walk is
complete.  Conflations ending in a given module come from two
complementary families: the full subgroup walk while the middle stays
small, and single-generator (cyclic) subgroups — enumerable by walking
elements — with no cap on the middle.  Together they are discriminating:
a non-flat end always admits a non-pure conflation with cyclic prime
kernel, middle = end order times p.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .complexes import (
    ChainMap,
    Complex,
    ComplexConflation,
    single_complex,
    zero_complex,
)
from .exact import Conflation, conflation_from_mono
from .modules import (
    FiniteModule,
    Morphism,
    RingSpec,
    cokernel,
    factor_through_epi,
    factor_through_mono,
    kernel,
    solution_set,
    subgroup_from_lattice,
)
from .monoidal import hom_module, postcompose_map, precompose_map
from .snf import lattice_member


# ---------------------------------------------------------------------------
# modules and morphisms
# ---------------------------------------------------------------------------


@lru_cache(maxsize=512)
def enumerate_modules(n: int, max_order: int) -> tuple[FiniteModule, ...]:
    """All canonical modules over Z/n of order <= max_order, sorted."""
    ring = RingSpec(n)
    divisors = [d for d in range(2, n + 1) if n % d == 0]
    chains = [()]

    def extend(chain: tuple[int, ...], product: int):
        last = chain[-1] if chain else 1
        for d in divisors:
            if d % last == 0 and product * d <= max_order:
                chains.append(chain + (d,))
                extend(chain + (d,), product * d)

    if max_order >= 2:
        extend((), 1)
    mods = [FiniteModule(ring, c) for c in chains]
    mods.sort(key=lambda m: (m.order, m.rank(), m.invariant_factors))
    return tuple(mods)


def modules_of_order(n: int, order: int) -> tuple[FiniteModule, ...]:
    return tuple(m for m in enumerate_modules(n, order) if m.order == order)


def enumerate_morphisms(dom: FiniteModule, cod: FiniteModule):
    """All morphisms dom -> cod, entries walked row-major."""
    from math import gcd

    d = dom.invariant_factors
    e = cod.invariant_factors
    cells = []
    for j in range(len(e)):
        for i in range(len(d)):
            g = gcd(d[i], e[j])
            step = e[j] // g
            cells.append([t * step for t in range(g)])
    k = len(d)
    for combo in itertools.product(*cells):
        matrix = tuple(combo[j * k : (j + 1) * k] for j in range(len(e)))
        yield Morphism(dom, cod, matrix)


def sample_morphisms(dom: FiniteModule, cod: FiniteModule, count: int, seed: int):
    """A reproducible sample of morphisms dom -> cod."""
    from math import gcd

    rng = random.Random((seed, dom.invariant_factors, cod.invariant_factors, count).__repr__())
    d = dom.invariant_factors
    e = cod.invariant_factors
    for _ in range(count):
        matrix = tuple(
            tuple(
                rng.randrange(gcd(d[i], e[j])) * (e[j] // gcd(d[i], e[j]))
                for i in range(len(d))
            )
            for j in range(len(e))
        )
        yield Morphism(dom, cod, matrix)


def enumerate_monos(dom: FiniteModule, cod: FiniteModule):
    return (f for f in enumerate_morphisms(dom, cod) if f.is_mono())


def enumerate_extensions(k: FiniteModule, f: FiniteModule) -> list[Conflation]:
    """Every conflation k -> Y -> f, one per monomorphism k -> Y."""
    if k.ring != f.ring:
        raise ValueError("extension ends live over different rings")
    n = k.ring.modulus
    out = []
    for y in modules_of_order(n, k.order * f.order):
        for mono in enumerate_monos(k, y):
            if cokernel(mono)[0] == f:
                out.append(conflation_from_mono(mono))
    return out


# ---------------------------------------------------------------------------
# subgroup walks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupEntry:
    """A subgroup of a fixed ambient module with its conflation data."""

    ambient: FiniteModule
    sub: FiniteModule
    inclusion: Morphism
    quotient: FiniteModule
    projection: Morphism
    key: tuple

    def conflation(self) -> Conflation:
        return Conflation(self.inclusion, self.projection)


def _entry_from_lattice(y: FiniteModule, rows: list[list[int]], key: tuple) -> SubgroupEntry:
    sub, incl = subgroup_from_lattice(y, rows)
    quot, proj = cokernel(incl)
    return SubgroupEntry(y, sub, incl, quot, proj, key)


@lru_cache(maxsize=2048)
def subgroup_catalog(y: FiniteModule) -> tuple[SubgroupEntry, ...]:
    """Every subgroup of y, via the complete Hermite-basis walk.

    Rows are chosen bottom-up.  Whether row i's ambient relation
    d_i * e_i lies in the lattice depends only on rows i..k-1, so each
    partial choice is checked immediately and dead branches are cut
    before the walk ever touches the rows above them.
    """
    d = y.invariant_factors
    k = len(d)
    entries = []

    def walk(i: int, below: list[list[int]]):
        if i < 0:
            rows = [list(r) for r in below]
            key = tuple(tuple(r) for r in below)
            entries.append(_entry_from_lattice(y, rows, key))
            return
        pivots = {j: below[j - i - 1][j] for j in range(i + 1, k)}
        for h in range(1, d[i] + 1):
            if d[i] % h:
                continue
            for tail in itertools.product(*[range(pivots[j]) for j in range(i + 1, k)]):
                row = [0] * i + [h] + list(tail)
                cand = [row] + below
                if lattice_member(cand, [d[i] if c == i else 0 for c in range(k)]):
                    walk(i - 1, cand)

    walk(k - 1, [])
    return tuple(entries)


@lru_cache(maxsize=4096)
def cyclic_subgroup_catalog(y: FiniteModule) -> tuple[SubgroupEntry, ...]:
    """Every cyclic subgroup of y (including the zero subgroup)."""
    from .snf import hermite_normal_form

    d = y.invariant_factors
    k = len(d)
    seen = {}
    for x in y.elements():
        rows = [list(x)] + [[d[i] if c == i else 0 for c in range(k)] for i in range(k)]
        basis = hermite_normal_form(rows, k)
        key = tuple(tuple(r) for r in basis)
        if key not in seen:
            seen[key] = _entry_from_lattice(y, [list(x)], key)
    return tuple(seen.values())


def conflations_ending_in(
    f: FiniteModule, kernel_bound: int, middle_bound: int
):
    """Subgroup entries for every enumerated conflation K -> Y -> f with
    |K| <= kernel_bound.

    The full subgroup walk runs while |Y| <= middle_bound; cyclic kernels
    are walked for every divisor d <= kernel_bound regardless of middle
    size, which keeps the family discriminating for flatness at every
    end module.  Deduplicated by (middle, subgroup) so the two walks
    never hand out the same conflation twice.
    """
    n = f.ring.modulus
    seen = set()
    for k_ord in range(1, kernel_bound + 1):
        middle_order = f.order * k_ord
        for y in modules_of_order(n, middle_order):
            if middle_order <= middle_bound:
                for entry in subgroup_catalog(y):
                    if entry.sub.order == k_ord and entry.quotient == f:
                        tag = (y.invariant_factors, entry.key)
                        if tag not in seen:
                            seen.add(tag)
                            yield entry
            elif n % k_ord == 0:
                for entry in cyclic_subgroup_catalog(y):
                    if entry.sub.order == k_ord and entry.quotient == f:
                        tag = (y.invariant_factors, entry.key)
                        if tag not in seen:
                            seen.add(tag)
                            yield entry


def conflations_with_sub(m: FiniteModule, middle_bound: int):
    """Conflations m -> Y -> C with |Y| <= middle_bound."""
    n = m.ring.modulus
    for y in enumerate_modules(n, middle_bound):
        if y.order % m.order:
            continue
        for entry in subgroup_catalog(y):
            if entry.sub == m:
                yield entry.conflation()


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------


@lru_cache(maxsize=128)
def enumerate_complexes(n: int, span: int, max_component_order: int) -> tuple[Complex, ...]:
    """All complexes with the given window span, cyclic components, base degree 0.

    Interior slots may be zero (edges never are — windows are normalized),
    and differentials range over every choice with vanishing composites.
    """
    ring = RingSpec(n)
    cyclics = [m for m in enumerate_modules(n, max_component_order) if m.rank() == 1]
    out = [zero_complex(ring)]
    for s in range(1, span + 1):
        slot_universes = []
        for pos in range(s):
            if pos == 0 or pos == s - 1:
                slot_universes.append(list(cyclics))
            else:
                slot_universes.append([ring.zero_module()] + list(cyclics))
        for comps in itertools.product(*slot_universes):
            stacks = [[]]
            for i in range(s - 1):
                new_stacks = []
                for stack in stacks:
                    prev = stack[-1] if stack else None
                    for dmor in enumerate_morphisms(comps[i], comps[i + 1]):
                        if prev is not None and not (dmor @ prev).is_zero_morphism:
                            continue
                        new_stacks.append(stack + [dmor])
                stacks = new_stacks
            for stack in stacks:
                out.append(Complex(ring, 0, tuple(comps), tuple(stack)))
    return tuple(out)


def complex_conflation_from_chain_epi(g: ChainMap) -> ComplexConflation:
    """Complete a degreewise-epi chain map to a conflation of complexes."""
    y = g.source
    kernels = {}
    inclusions = {}
    for n in y.degrees():
        kmod, incl = kernel(g.part(n))
        kernels[n] = kmod
        inclusions[n] = incl
    diffs = {}
    for n in y.degrees():
        if n + 1 in kernels:
            diffs[n] = factor_through_mono(y.differential(n) @ inclusions[n], inclusions[n + 1])
    window = [n for n in y.degrees()]
    comps = tuple(kernels[n] for n in window)
    dtuple = tuple(diffs[n] for n in window[:-1])
    x = Complex(y.ring, y.lo, comps, dtuple)
    parts = tuple(inclusions[n] for n in x.degrees())
    f = ChainMap(x, y, parts)
    return ComplexConflation(f, g)


def flat_disk_cover(f: Complex) -> ComplexConflation:
    """The canonical conflation K -> Q -> f with Q contractible and flat.

    Q is a sum of two-term identity complexes on free modules, one disk
    per degree of f, mapping onto f by (generator cover, boundary of the
    cover).  Purity of this single conflation already discriminates flat
    complexes, because a split dual would exhibit dual(f) as a summand
    of an injective contractible complex.
    """
    ring = f.ring
    if f.is_zero:
        g = ChainMap(zero_complex(ring), f, ())
        return ComplexConflation(g, ChainMap(f, f, ()))
    free = {
        n: FiniteModule(ring, (ring.modulus,) * f.component(n).rank())
        for n in range(f.lo, f.hi + 1)
    }
    free[f.lo - 1] = ring.zero_module()
    free[f.hi + 1] = ring.zero_module()
    covers = {
        n: Morphism(
            free[n],
            f.component(n),
            tuple(
                tuple(1 if i == j else 0 for i in range(free[n].rank()))
                for j in range(f.component(n).rank())
            ),
        )
        for n in range(f.lo, f.hi + 1)
    }
    comps = []
    parts = []
    window = list(range(f.lo, f.hi + 2))
    from .modules import direct_sum

    q_data = {}
    for n in window:
        lower = free.get(n, ring.zero_module())
        upper = free.get(n - 1, ring.zero_module())
        ds = direct_sum(lower, upper)
        q_data[n] = ds
        comps.append(ds.module)
    diffs = []
    for idx, n in enumerate(window[:-1]):
        src = q_data[n]
        dst = q_data[n + 1]
        lower = free.get(n, ring.zero_module())
        step = dst.injections[1] @ Morphism.identity(lower) @ src.projections[0]
        diffs.append(step)
    q = Complex(ring, f.lo, tuple(comps), tuple(diffs))
    for n in q.degrees():
        ds = q_data[n]
        lower = covers.get(n)
        upper = covers.get(n - 1)
        term = None
        if lower is not None:
            term = lower @ ds.projections[0]
        if upper is not None:
            boundary = f.differential(n - 1) @ upper @ ds.projections[1]
            term = boundary if term is None else term + boundary
        if term is None:
            term = Morphism.zero(ds.module, f.component(n))
        parts.append(term)
    g = ChainMap(q, f, tuple(parts))
    return complex_conflation_from_chain_epi(g)


def enumerate_complex_conflations_ending_in(
    f: Complex, kernel_cap: int, max_count: int
):
    """Conflations of complexes ending in f: the disk cover plus a capped
    walk over degreewise extensions with compatible differentials."""
    yield flat_disk_cover(f)
    if f.is_zero or max_count <= 0:
        return
    ring = f.ring
    n = ring.modulus
    window = list(f.degrees())
    per_degree = []
    for nd in window:
        comp = f.component(nd)
        cands = []
        for k_ord in range(1, kernel_cap + 1):
            for y in modules_of_order(n, comp.order * k_ord):
                for entry in subgroup_catalog(y):
                    if entry.sub.order == k_ord and entry.quotient == comp:
                        cands.append(entry)
        per_degree.append(cands)
    produced = 0
    for combo in itertools.product(*per_degree):
        if produced >= max_count:
            return
        if all(e.sub.is_zero for e in combo):
            continue
        for cc in _complete_differentials(f, window, combo, max_count - produced):
            yield cc
            produced += 1
            if produced >= max_count:
                return


def _complete_differentials(f: Complex, window, combo, budget: int):
    """All middle differentials compatible with the chosen degreewise epis."""
    from .modules import direct_sum

    stacks = [[]]
    for idx in range(len(window) - 1):
        nd = window[idx]
        y_here = combo[idx].ambient
        y_next = combo[idx + 1].ambient
        proj_here = combo[idx].projection
        proj_next = combo[idx + 1].projection
        h = hom_module(y_here, y_next)
        post_target = hom_module(y_here, f.component(nd + 1))
        post = postcompose_map(proj_next, y_here)
        rhs = post_target.of_morphism(f.differential(nd) @ proj_here)
        new_stacks = []
        for stack in stacks:
            if len(new_stacks) >= budget * 4:
                break
            prev = stack[-1] if stack else None
            if prev is None:
                system = post
                target = rhs
            else:
                pre_target = hom_module(prev.domain, y_next)
                pre = precompose_map(prev, y_next)
                big = direct_sum(post.codomain, pre.codomain)
                system = big.injections[0] @ post + big.injections[1] @ pre
                target = big.injections[0].apply(rhs)
            for sol in solution_set(system, target):
                new_stacks.append(stack + [h.to_morphism(sol)])
                if len(new_stacks) >= budget * 4:
                    break
        stacks = new_stacks
    count = 0
    for stack in stacks:
        if count >= budget:
            return
        y = Complex(f.ring, f.lo, tuple(e.ambient for e in combo), tuple(stack))
        parts = tuple(combo[i].projection for i in range(len(window)))
        g = ChainMap(y, f, parts)
        yield complex_conflation_from_chain_epi(g)
        count += 1


def enumerate_complex_conflations_bounded(ring: RingSpec, bound: int):
    """A small, deterministic family of complex conflations with middle
    order <= bound: trivial ends plus prime spheres inside every
    enumerated two-term middle."""
    out = []
    for y in enumerate_complexes(ring.modulus, 2, bound):
        total = 1
        for c in y.components:
            total *= c.order
        if y.is_zero or total > bound:
            continue
        ident = ChainMap(y, y, tuple(Morphism.identity(c) for c in y.components))
        zero_target = zero_complex(ring)
        to_zero = ChainMap(y, zero_target, tuple(Morphism.zero(c, ring.zero_module()) for c in y.components))
        out.append(ComplexConflation(ChainMap(zero_complex(ring), y, ()), ident))
        out.append(ComplexConflation(ident, to_zero))
        for nd in y.degrees():
            for entry in cyclic_subgroup_catalog(y.component(nd)):
                if entry.sub.is_zero or entry.sub.order not in (2, 3, 5, 7, 11):
                    continue
                if not (y.differential(nd) @ entry.inclusion).is_zero_morphism:
                    continue
                x = single_complex(entry.sub, nd)
                fmap = ChainMap(
                    x,
                    y,
                    (entry.inclusion,),
                )
                z_comps = []
                z_projs = {}
                for m in y.degrees():
                    if m == nd:
                        z_comps.append(entry.quotient)
                        z_projs[m] = entry.projection
                    else:
                        z_comps.append(y.component(m))
                        z_projs[m] = Morphism.identity(y.component(m))
                z_diffs = []
                degs = list(y.degrees())
                for m in degs[:-1]:
                    z_diffs.append(
                        factor_through_epi(z_projs[m + 1] @ y.differential(m), z_projs[m])
                    )
                z = Complex(ring, y.lo, tuple(z_comps), tuple(z_diffs))
                gparts = tuple(z_projs[m] for m in y.degrees())
                gmap = ChainMap(y, z, gparts)
                out.append(ComplexConflation(fmap, gmap))
    return out
