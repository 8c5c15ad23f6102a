"""
Realization of orbit-category sets
Contravariant Or(G)-sets, their realization by 1-dimensional G-CW complexes,
verification of realizations, and the multiplicative-induction Euler identity
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .burnside import BurnsideElement, from_marks
from .errors import NonIntegralMarks, RealizationError, ValidationReport
from .fingroup import FiniteGroup, GSet, coset_space, orbits, weyl_group
from .gcw import Cell, GCWComplex, fixed_subcomplex

logger = logging.getLogger(__name__)

MapKey = Tuple[int, int, int]


def subconjugating_elements(group: FiniteGroup, k: int, h: int) -> List[int]:
    """Elements g with g^-1 K g in H for the class representatives K = H_k and H = H_h"""
    classes = group.subgroup_classes
    K = classes[k].representative.elements
    H = set(classes[h].representative.elements)
    inv = group.inverse
    return [g for g in range(group.order)
            if all(int(group.mul[group.mul[inv[g], x], g]) in H for x in K)]


@dataclass
class OrbitCategorySet:
    """
    A contravariant Or(G)-set on the class representatives H_i.

    values[i] is S(G/H_i) as a W H_i-set; maps[(k, h, g)] is S(sigma_g): S(G/H_h) -> S(G/H_k)
    for the G-map sigma_g: G/H_k -> G/H_h, aH_k -> agH_h (defined when g^-1 H_k g in H_h).
    """
    group: FiniteGroup
    values: Dict[int, GSet]
    maps: Dict[MapKey, Tuple[int, ...]] = field(default_factory=dict)

    def size(self, i: int) -> int:
        return self.values[i].size if i in self.values else 0

    def is_empty(self) -> bool:
        return all(v.size == 0 for v in self.values.values())


def validate_orbit_set(S: OrbitCategorySet) -> ValidationReport:
    """
    Check functoriality on the structure maps: identities, right H-invariance,
    composition, and agreement with the Weyl actions.
    """
    report = ValidationReport("orbit set")
    G = S.group
    n = len(G.subgroup_classes)
    for i in range(n):
        if i not in S.values:
            report.add(f"no value at class {i}")
            continue
        weyl = weyl_group(G, G.subgroup_classes[i].representative)
        if S.values[i].group.order != weyl.order:
            report.add(f"value at class {i} is not a set over the Weyl group")
        report.extend(f"class {i}: {p}" for p in S.values[i].validate())
    if not report.ok:
        return report

    elements = {(k, h): subconjugating_elements(G, k, h) for k in range(n) for h in range(n)}
    for (k, h), gs in elements.items():
        for g in gs:
            image = S.maps.get((k, h, g))
            if image is None or len(image) != S.size(h) or any(not 0 <= v < S.size(k) for v in image):
                report.add(f"structure map ({k}, {h}, {g}) missing or malformed")
    if not report.ok:
        return report

    for i in range(n):
        if S.maps[(i, i, 0)] != tuple(range(S.size(i))):
            report.add(f"identity of G/H_{i} does not act as the identity")
        weyl = weyl_group(G, G.subgroup_classes[i].representative)
        for w, nrep in enumerate(weyl.representatives):
            if S.maps[(i, i, nrep)] != tuple(int(v) for v in S.values[i].action[w]):
                report.add(f"Weyl action at class {i} disagrees with the structure map of {nrep}")

    for (k, h), gs in elements.items():
        H = G.subgroup_classes[h].representative.elements
        for g in gs:
            for x in H:
                if S.maps[(k, h, int(G.mul[g, x]))] != S.maps[(k, h, g)]:
                    report.add(f"structure map ({k}, {h}, {g}) depends on the coset representative")
                    break

    # sigma_b o sigma_g = sigma_{gb}, so S(sigma_{gb}) = S(sigma_g) o S(sigma_b)
    for k in range(n):
        for h in range(n):
            for l in range(n):
                for g in elements[(k, h)]:
                    first = S.maps[(k, h, g)]
                    for b in elements[(h, l)]:
                        composite = tuple(first[v] for v in S.maps[(h, l, b)])
                        if S.maps[(k, l, int(G.mul[g, b]))] != composite:
                            report.add(f"composition fails for ({k}, {h}, {g}) and ({h}, {l}, {b})")
    return report


def orbit_set_of_complex(X: GCWComplex) -> OrbitCategorySet:
    """The Or(G)-set G/H -> pi_0(X^H) of a complex"""
    G = X.group
    classes = G.subgroup_classes
    n = len(classes)
    fixed = [fixed_subcomplex(X, c.representative) for c in classes]
    values = {i: fixed[i].weyl_action for i in range(n)}
    maps: Dict[MapKey, Tuple[int, ...]] = {}
    for k in range(n):
        for h in range(n):
            for g in subconjugating_elements(G, k, h):
                maps[(k, h, g)] = tuple(fixed[k].component_of[int(X.action[g, comp[0]])]
                                        for comp in fixed[h].components)
    return OrbitCategorySet(G, values, maps)


class _Builder:
    """Incremental 1-dimensional G-CW complex made of vertex and edge orbits"""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.vertex_orbits: List[Tuple[int, int, object]] = []  # (class, value element, coset space)
        self.edge_orbits: List[Tuple[int, int, int, object]] = []  # (class, vertex a, vertex b, coset space)
        self.vertex_base: List[int] = []

    @property
    def n_vertices(self) -> int:
        return sum(o[2].gset.size for o in self.vertex_orbits)

    def add_vertex_orbit(self, i: int, s: int):
        space = coset_space(self.group, self.group.subgroup_classes[i].representative)
        self.vertex_base.append(self.n_vertices)
        self.vertex_orbits.append((i, s, space))

    def vertex_info(self) -> List[Tuple[int, int, int]]:
        """Per vertex: (orbit, coset index, coset representative)"""
        info = []
        for j, (_i, _s, space) in enumerate(self.vertex_orbits):
            for c, rep in enumerate(space.representatives):
                info.append((j, c, rep))
        return info

    def vertex_action(self, g: int, v: int) -> int:
        j, c, _rep = self.vertex_info()[v]
        space = self.vertex_orbits[j][2]
        return self.vertex_base[j] + int(space.gset.action[g, c])

    def edges(self) -> List[Tuple[int, int, Tuple[int, ...]]]:
        """Per edge cell: (start vertex, end vertex, stabilizer elements)"""
        out = []
        for (_i, a, b, space) in self.edge_orbits:
            for rep in space.representatives:
                out.append((self.vertex_action(rep, a), self.vertex_action(rep, b),
                            tuple(sorted(int(self.group.conjugate_element(rep, x))
                                         for x in self.group.subgroup_classes[_i].representative.elements))))
        return out

    def build(self) -> GCWComplex:
        G = self.group
        nv = self.n_vertices
        cells: List[Cell] = [Cell(v, 0) for v in range(nv)]
        labels = []
        for j, (i, s, space) in enumerate(self.vertex_orbits):
            labels.extend(f"v{j}.{c}" for c in range(space.gset.size))
        action = np.zeros((G.order, 0), dtype=np.int64)
        blocks = []
        for j, (_i, _s, space) in enumerate(self.vertex_orbits):
            blocks.append(self.vertex_base[j] + space.gset.action)
        base = nv
        for j, (_i, a, b, space) in enumerate(self.edge_orbits):
            for c, rep in enumerate(space.representatives):
                start, end = self.vertex_action(rep, a), self.vertex_action(rep, b)
                cells.append(Cell(base + c, 1, frozenset({start, end}), ((end, 1), (start, -1))))
                labels.append(f"e{j}.{c}")
            blocks.append(base + space.gset.action)
            base += space.gset.size
        if blocks:
            action = np.hstack(blocks)
        return GCWComplex(G, cells, action.reshape(G.order, len(cells)), labels=labels)


def _value_of_vertex(S: OrbitCategorySet, builder: _Builder, i: int, v: int) -> Optional[int]:
    """phi_i(v) in S(G/H_i) for a vertex v of X^{H_i}, or None if v is not H_i-fixed"""
    j, _c, a = builder.vertex_info()[v]
    h, s, _space = builder.vertex_orbits[j]
    image = S.maps.get((i, h, a))
    if image is None:
        return None
    return image[s]


def realize_orbit_set(S: OrbitCategorySet) -> GCWComplex:
    """
    Realize S by a 1-dimensional G-CW complex X with pi_0(X^H) = S(G/H).

    Classes are processed by decreasing subgroup. For H_i, one vertex orbit
    G/H_i is added per W H_i-orbit of S(G/H_i); then for every orbit
    representative s, edge orbits of type G/H_i join the least vertex of the
    first component over s to the translates u.C_j of all components over s,
    u running over the isotropy group (W H_i)_s.

    Raises:
        RealizationError: If S is not a valid orbit-category set
    """
    validate_orbit_set(S).raise_if_invalid(RealizationError)
    G = S.group
    builder = _Builder(G)
    n = len(G.subgroup_classes)
    for i in range(n - 1, -1, -1):
        value = S.values[i]
        reps = [o.representative for o in orbits(value)] if value.size else []
        for s in reps:
            builder.add_vertex_orbit(i, s)
        if not reps:
            continue

        H = G.subgroup_classes[i].representative
        weyl = weyl_group(G, H)
        vertices = [v for v in range(builder.n_vertices) if _value_of_vertex(S, builder, i, v) is not None]
        position = {v: k for k, v in enumerate(vertices)}
        members = set(H.elements)
        rows, cols = [], []
        for start, end, stab in builder.edges():
            if members <= set(stab):
                rows.append(position[start])
                cols.append(position[end])
        graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(vertices), len(vertices)))
        _count, comp_labels = connected_components(graph, directed=False)

        for s in reps:
            over_s: Dict[int, int] = {}
            for v in vertices:
                if _value_of_vertex(S, builder, i, v) == s:
                    over_s.setdefault(int(comp_labels[position[v]]), v)
            firsts = sorted(over_s.values())
            anchor = firsts[0]
            for u in value.isotropy(s):
                nrep = weyl.representatives[u]
                for v in firsts:
                    target = builder.vertex_action(nrep, v)
                    if target != anchor:
                        space = coset_space(G, H)
                        builder.edge_orbits.append((i, anchor, target, space))

    X = builder.build()
    logger.info("realized orbit set over %s with %d cells", G.name, X.n_cells)
    return X


def _signature(gset: GSet) -> List[Tuple[int, Tuple[int, ...]]]:
    return sorted((len(o.elements), gset.isotropy(o.representative)) for o in orbits(gset))


def verify_realization(X: GCWComplex, S: OrbitCategorySet) -> bool:
    """
    Decide whether pi_0 of the fixed sets of X is isomorphic to S as an Or(G)-set.

    Compares orbit signatures first, then searches for Weyl-equivariant
    bijections chosen on orbit representatives and checks naturality.

    Raises:
        RealizationError: If X and S are over different groups
    """
    if not X.group.same_table(S.group):
        raise RealizationError(f"complex over {X.group.name} and orbit set over {S.group.name} use different groups")
    T = orbit_set_of_complex(X)
    G = S.group
    n = len(G.subgroup_classes)
    for i in range(n):
        if T.size(i) != S.size(i) or _signature(T.values[i]) != _signature(S.values[i]):
            logger.debug("orbit signature mismatch at class %d", i)
            return False

    choices: List[List[Tuple[int, ...]]] = []
    for i in range(n):
        choices.append(list(_equivariant_bijections(T.values[i], S.values[i])))
        if not choices[-1]:
            return False

    keys = {(k, h): subconjugating_elements(G, k, h) for k in range(n) for h in range(n)}
    chosen: Dict[int, Tuple[int, ...]] = {}

    def natural(k: int, h: int) -> bool:
        beta_k, beta_h = chosen[k], chosen[h]
        for g in keys[(k, h)]:
            t_map, s_map = T.maps[(k, h, g)], S.maps[(k, h, g)]
            if any(beta_k[t_map[v]] != s_map[beta_h[v]] for v in range(T.size(h))):
                return False
        return True

    def search(i: int) -> bool:
        if i < 0:
            return True
        for beta in choices[i]:
            chosen[i] = beta
            if all(natural(i, j) and natural(j, i) for j in chosen):
                if search(i - 1):
                    return True
            del chosen[i]
        return False

    return search(n - 1)


def _equivariant_bijections(source: GSet, target: GSet):
    """All equivariant bijections source -> target, as image tuples"""
    if source.size != target.size:
        return
    src_orbits = orbits(source)
    tgt_isotropy = [set(target.isotropy(t)) for t in range(target.size)]
    options = []
    for o in src_orbits:
        stab = set(source.isotropy(o.representative))
        options.append([t for t in range(target.size) if tgt_isotropy[t] == stab])
    for picks in itertools.product(*options):
        image = [-1] * source.size
        ok = True
        for o, t in zip(src_orbits, picks):
            for g in range(source.group.order):
                x, y = int(source.action[g, o.representative]), int(target.action[g, t])
                if image[x] == -1:
                    image[x] = y
                elif image[x] != y:
                    ok = False
        if ok and sorted(image) == list(range(target.size)):
            yield tuple(image)


def multiplicative_induction_euler(H: FiniteGroup, chi: int) -> BurnsideElement:
    """
    Equivariant Euler characteristic of the multiplicative induction of a
    space with Euler characteristic chi: the marks are chi^{|H/K|}.

    Raises:
        AssertionError: If the marks fail to invert integrally
    """
    marks = [chi ** (H.order // c.order) for c in H.subgroup_classes]
    try:
        element = from_marks(H, marks)
    except NonIntegralMarks as e:
        raise AssertionError(f"multiplicative induction marks are not integral: {e}") from e
    assert element.coeffs[-1] == chi
    return element
