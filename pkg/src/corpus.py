"""
Test corpus
Named standard groups and seeded generators of complexes, maps,
group-ring endomorphisms and orbit-category sets
"""

import logging
import math
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
import sympy

from .fingroup import (FiniteGroup, Subgroup, coset_space, cyclic_group, dihedral_group, direct_product,
                       symmetric_group, trivial_group)
from .gcw import Cell, CellularGMap, GCWComplex, fixed_subcomplex, validate_map
from .lefschetz import GroupRingEndomorphism
from .realize import OrbitCategorySet, orbit_set_of_complex

logger = logging.getLogger(__name__)

_GROUP_CACHE: Dict[str, FiniteGroup] = {}


def standard_group(name: str) -> FiniteGroup:
    """
    Build a group from a short name.

    Supported: 1, Zn, Sn, Dn (order n dihedral, n even), and products joined by 'x'.

    Raises:
        ValueError: For an unknown name
    """
    key = name.strip()
    if key in _GROUP_CACHE:
        return _GROUP_CACHE[key]
    factors = key.split('x')
    if len(factors) > 1:
        group = standard_group(factors[0])
        for factor in factors[1:]:
            group = direct_product(group, standard_group(factor))
        group.name = key
    elif key == '1':
        group = trivial_group()
    else:
        match = re.fullmatch(r'([ZSD])(\d+)', key)
        if not match:
            raise ValueError(f"unknown group name {name!r}")
        kind, n = match.group(1), int(match.group(2))
        if kind == 'Z':
            group = cyclic_group(n)
        elif kind == 'S':
            group = symmetric_group(n)
        else:
            if n % 2 or n < 4:
                raise ValueError(f"dihedral group order must be even and at least 4, got {n}")
            group = dihedral_group(n // 2)
    _GROUP_CACHE[key] = group
    return group


def odd_order_groups(max_order: int = 15) -> List[FiniteGroup]:
    """All groups of odd order up to max_order (up to 15 these are cyclic or Z3xZ3)"""
    groups = [trivial_group()]
    for n in range(3, max_order + 1, 2):
        groups.append(cyclic_group(n))
        if n == 9:
            groups.append(standard_group('Z3xZ3'))
    return groups


def random_complex(group: FiniteGroup, rng: np.random.Generator, vertex_orbits: int = 3,
                   edge_orbits: int = 4) -> GCWComplex:
    """
    A random 1-dimensional G-CW complex.

    Vertex orbits are G/V for random subgroups V; an edge orbit G/E joins two
    distinct vertices fixed by E.
    """
    subgroups = group.subgroups
    vertex_spaces = []
    base = 0
    for _ in range(vertex_orbits):
        sub = subgroups[int(rng.integers(len(subgroups)))]
        space = coset_space(group, sub)
        vertex_spaces.append((base, space))
        base += space.gset.size
    n_vertices = base
    vertex_action = np.hstack([b + s.gset.action for b, s in vertex_spaces])
    stabs = [set(int(g) for g in np.flatnonzero(vertex_action[:, v] == v)) for v in range(n_vertices)]

    cells: List[Cell] = [Cell(v, 0) for v in range(n_vertices)]
    blocks = [vertex_action]
    for _ in range(edge_orbits):
        sub = subgroups[int(rng.integers(len(subgroups)))]
        candidates = [v for v in range(n_vertices) if set(sub.elements) <= stabs[v]]
        if len(candidates) < 2:
            continue
        a, b = rng.choice(candidates, size=2, replace=False)
        space = coset_space(group, sub)
        start = len(cells)
        for c, rep in enumerate(space.representatives):
            u, w = int(vertex_action[rep, a]), int(vertex_action[rep, b])
            cells.append(Cell(start + c, 1, frozenset({u, w}), ((w, 1), (u, -1))))
        blocks.append(start + space.gset.action)
    action = np.hstack(blocks)
    return GCWComplex(group, cells, action)


def _integer_cycles(X: GCWComplex, edges: List[int]) -> List[Dict[int, int]]:
    """Integer basis of the 1-cycles supported on the given edges"""
    if not edges:
        return []
    matrix, _rows, cols = X.boundary_matrix(1, set(edges) | {f for e in edges for f in X.cells[e].faces})
    cycles = []
    for vector in sympy.Matrix(matrix.tolist()).nullspace():
        scale = math.lcm(*[int(sympy.fraction(v)[1]) for v in vector])
        cycles.append({cols[k]: int(v * scale) for k, v in enumerate(vector) if v != 0})
    return cycles


def random_map(X: GCWComplex, rng: np.random.Generator, attempts: int = 20,
               fallback: bool = True) -> Optional[CellularGMap]:
    """
    A random cellular G-map on a 1-dimensional complex.

    Vertex orbit representatives go to vertices with larger stabilizer; an
    edge goes to a vertex if its endpoints collapse, otherwise to an edge of
    X^{G_e} joining the images, plus a random integer cycle of that edge's
    component in X^{G_e}. When every attempt fails, returns the identity if
    fallback is set and None otherwise.
    """
    G = X.group
    vertices = X.cells_of_dim(0)
    for _ in range(attempts):
        carrier: Dict[int, int] = {}
        chain: Dict[int, Dict[int, int]] = {}
        for v in (e for e in X.orbit_representatives if X.cells[e].dim == 0):
            stab = X.stabilizer(v)
            targets = [w for w in vertices if stab.is_subgroup_of(X.stabilizer(w))]
            w = targets[int(rng.integers(len(targets)))]
            for g in range(G.order):
                carrier[int(X.action[g, v])] = int(X.action[g, w])
        ok = True
        for e in (e for e in X.orbit_representatives if X.cells[e].dim == 1):
            bd = X.cells[e].boundary_chain()
            start = next(c for c, v in bd.items() if v < 0)
            end = next(c for c, v in bd.items() if v > 0)
            fa, fb = carrier[start], carrier[end]
            stab = X.stabilizer(e)
            if fa == fb:
                target, base = fa, {}
            else:
                options = []
                for c in X.cells_of_dim(1):
                    if not stab.is_subgroup_of(X.stabilizer(c)):
                        continue
                    cb = X.cells[c].boundary_chain()
                    if cb == {fb: 1, fa: -1}:
                        options.append((c, 1))
                    elif cb == {fa: 1, fb: -1}:
                        options.append((c, -1))
                if not options:
                    ok = False
                    break
                target, sign = options[int(rng.integers(len(options)))]
                base = {target: sign}
                fixed = fixed_subcomplex(X, stab)
                home = fixed.component_of[target]
                edges = [c for c in fixed.components[home] if X.cells[c].dim == 1]
                for cycle in _integer_cycles(X, edges):
                    k = int(rng.integers(-2, 3))
                    for c, v in cycle.items():
                        base[c] = base.get(c, 0) + k * v
            for g in range(G.order):
                ge = int(X.action[g, e])
                carrier[ge] = int(X.action[g, target])
                chain[ge] = {int(X.action[g, c]): v for c, v in base.items() if v}
        if not ok:
            continue
        for v in vertices:
            chain[v] = {carrier[v]: 1}
        f = CellularGMap(X, [carrier[e] for e in range(X.n_cells)], [chain[e] for e in range(X.n_cells)],
                         validate=False)
        if validate_map(f).ok:
            return f
        logger.debug("discarded an invalid random map")
    logger.warning("no valid random map on %d cells after %d attempts", X.n_cells, attempts)
    return CellularGMap.identity(X) if fallback else None


def random_endomorphism(group: FiniteGroup, subgroups: List[Subgroup], rng: np.random.Generator,
                        density: float = 0.5) -> GroupRingEndomorphism:
    """A random valid endomorphism: each entry is left-averaged over the source stabilizer"""
    m = len(subgroups)
    entries = []
    for i in range(m):
        row = []
        for j in range(m):
            seed = {int(g): Fraction(int(rng.integers(-3, 4)))
                    for g in range(group.order) if rng.random() < density}
            entry: Dict[int, Fraction] = {}
            for h in subgroups[j].elements:
                for g, c in seed.items():
                    z = int(group.mul[h, g])
                    entry[z] = entry.get(z, Fraction(0)) + c
            row.append(entry)
        entries.append(row)
    return GroupRingEndomorphism(group, subgroups, entries)


def random_orbit_set(group: FiniteGroup, rng: np.random.Generator) -> OrbitCategorySet:
    """The pi_0 orbit set of a random small complex"""
    X = random_complex(group, rng, vertex_orbits=int(rng.integers(1, 4)), edge_orbits=int(rng.integers(0, 4)))
    return orbit_set_of_complex(X)


def corpus_groups(names: Optional[List[str]] = None) -> List[FiniteGroup]:
    return [standard_group(n) for n in (names or ['Z2', 'Z3', 'Z4', 'Z2xZ2', 'S3'])]


def random_triples(names: List[str], per_group: int, seed: int,
                   redraws: int = 10) -> List[Tuple[FiniteGroup, GCWComplex, CellularGMap]]:
    """
    (group, complex, map) triples for the property suites.

    A complex admitting no random map is redrawn up to redraws times before
    the identity is used.
    """
    rng = np.random.default_rng(seed)
    triples = []
    for group in corpus_groups(names):
        for _ in range(per_group):
            for _ in range(redraws):
                X = random_complex(group, rng, vertex_orbits=int(rng.integers(1, 4)),
                                   edge_orbits=int(rng.integers(1, 5)))
                f = random_map(X, rng, fallback=False)
                if f is not None:
                    break
            else:
                logger.warning("using the identity map after %d redraws over %s", redraws, group.name)
                f = CellularGMap.identity(X)
            triples.append((group, X, f))
    return triples
