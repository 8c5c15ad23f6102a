"""Batch verification of the Lefschetz identities on fixtures and generated corpora"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .config import load_config
from .constants import VERDICT_FAIL, VERDICT_PASS
from .corpus import random_orbit_set, random_triples, standard_group
from .errors import EquilefError
from .fixtures import FixtureManager
from .gcw import CellularGMap, GCWComplex
from .lefschetz import (UGBasis, character, character_map, component_orbifold_euler, component_orbifold_lefschetz,
                        enumerate_classes, equivariant_lefschetz_class, nonequivariant_lefschetz, orbifold_lefschetz,
                        orbifold_lefschetz_via_trace, universal_euler)
from .localfix import (FixedPointDatum, local_character_value, local_lefschetz_class, local_orbifold_lefschetz,
                       vector_field_index)
from .presented import ComponentPresentation, dihedral_presentation, presented_euler, presented_index
from .realize import multiplicative_induction_euler, realize_orbit_set, verify_realization
from .utils import format_fraction

logger = logging.getLogger(__name__)


def _verdict(ok: bool) -> str:
    return VERDICT_PASS if ok else VERDICT_FAIL


def _tally(details: List[Dict]) -> Dict:
    passed = sum(1 for d in details if d['status'] == VERDICT_PASS)
    return {'passed': passed, 'failed': len(details) - passed, 'total': len(details), 'details': details}


class IdentityVerifier:
    """Check both sides of each identity and collect result dictionaries"""

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the verifier.

        Args:
            config: Configuration dictionary; config.yaml is loaded if omitted
        """
        self.config = config or load_config()
        self.results: List[Dict] = []

    def verify_agree(self, X: GCWComplex, f: CellularGMap, data: Sequence[FixedPointDatum]) -> Dict:
        """
        Compare the global class Lambda^G(f) with the local class from fixed-point data.

        Returns:
            Dictionary with verdict, both sides and per-class differences
        """
        basis = enumerate_classes(X)
        global_class = equivariant_lefschetz_class(f, basis)
        local_class = local_lefschetz_class(X, data, basis)
        diffs = [{'class': label, 'global': format_fraction(a), 'local': format_fraction(b)}
                 for label, a, b in zip(basis.labels, global_class.coeffs, local_class.coeffs) if a != b]
        result = {
            'verdict': _verdict(not diffs),
            'global': str(global_class),
            'local': str(local_class),
            'diffs': diffs,
        }
        logger.info("global/local agreement: %s", result['verdict'])
        return result

    def verify_presented(self, P: ComponentPresentation) -> Dict:
        """Compare chi^G with the index of the presented zeros"""
        euler = presented_euler(P)
        index = presented_index(P)
        diffs = [{'class': label, 'global': format_fraction(a), 'local': format_fraction(b)}
                 for label, a, b in zip(P.labels, euler.coeffs, index.coeffs) if a != b]
        result = {'verdict': _verdict(not diffs), 'global': str(euler), 'local': str(index), 'diffs': diffs}
        logger.info("euler/index agreement on %s: %s", P.name or 'presentation', result['verdict'])
        return result

    def character_lefschetz(self, f: CellularGMap, basis: Optional[UGBasis] = None) -> Dict:
        """Character of Lambda^G(f) against the orbifold Lefschetz number of each preserved component"""
        basis = basis or enumerate_classes(f.complex)
        values = character(equivariant_lefschetz_class(f, basis))
        details = []
        for y, label in enumerate(basis.labels):
            expected = component_orbifold_lefschetz(f, basis, y)
            if expected is None:
                continue
            details.append({'name': label, 'status': _verdict(values[y] == expected),
                            'expected': format_fraction(expected), 'actual': format_fraction(values[y])})
        return _tally(details)

    def character_euler(self, X: GCWComplex, basis: Optional[UGBasis] = None) -> Dict:
        """Character of chi^G against the orbifold Euler characteristic of each component"""
        basis = basis or enumerate_classes(X)
        values = character(universal_euler(X, basis))
        details = []
        for y, label in enumerate(basis.labels):
            expected = component_orbifold_euler(basis, y)
            details.append({'name': label, 'status': _verdict(values[y] == expected),
                            'expected': format_fraction(expected), 'actual': format_fraction(values[y])})
        return _tally(details)

    def character_local(self, X: GCWComplex, data: Sequence[FixedPointDatum],
                        basis: Optional[UGBasis] = None) -> Dict:
        """Character of the local class against the Weyl-orbit sum of fixed-subspace signs"""
        basis = basis or enumerate_classes(X)
        values = character(local_lefschetz_class(X, data, basis))
        details = []
        for y, label in enumerate(basis.labels):
            expected = local_character_value(X, data, basis, y)
            details.append({'name': label, 'status': _verdict(values[y] == expected),
                            'expected': format_fraction(expected), 'actual': format_fraction(values[y])})
        return _tally(details)

    def orbifold_fixed_points(self, f: CellularGMap, data: Sequence[FixedPointDatum]) -> Dict:
        """Orbifold Lefschetz number against the weighted sum of local determinant signs"""
        expected = local_orbifold_lefschetz(data)
        actual = orbifold_lefschetz(f)
        return _tally([{'name': 'orbifold', 'status': _verdict(actual == expected),
                        'expected': format_fraction(expected), 'actual': format_fraction(actual)}])

    def character_checks(self, X: GCWComplex, basis: Optional[UGBasis] = None) -> Dict:
        """Unitriangularity and full rank of the character matrix"""
        matrix = character_map(X, basis)
        return _tally([
            {'name': 'unitriangular', 'status': _verdict(matrix.is_lower_unitriangular())},
            {'name': 'full rank', 'status': _verdict(matrix.rank() == len(matrix))},
        ])

    def trace_checks(self, f: CellularGMap) -> Dict:
        """Incidence formula against the chain-level trace, and restriction to the trivial group"""
        incidence = orbifold_lefschetz(f)
        trace = orbifold_lefschetz_via_trace(f)
        expanded = nonequivariant_lefschetz(f)
        return _tally([
            {'name': 'trace', 'status': _verdict(incidence == trace),
             'expected': format_fraction(incidence), 'actual': format_fraction(trace)},
            {'name': 'restriction', 'status': _verdict(Fraction(expanded) == f.complex.group.order * incidence),
             'expected': format_fraction(f.complex.group.order * incidence), 'actual': str(expanded)},
        ])

    def identity_check(self, X: GCWComplex) -> Dict:
        """Lambda^G of the identity against chi^G"""
        basis = enumerate_classes(X)
        lefschetz = equivariant_lefschetz_class(CellularGMap.identity(X), basis)
        euler = universal_euler(X, basis)
        return _tally([{'name': 'identity', 'status': _verdict(lefschetz == euler),
                        'expected': str(euler), 'actual': str(lefschetz)}])

    def index_check(self, X: GCWComplex, zeros: Sequence[FixedPointDatum]) -> Dict:
        """Vector-field index against chi^G"""
        basis = enumerate_classes(X)
        index = vector_field_index(X, zeros, basis)
        euler = universal_euler(X, basis)
        return _tally([{'name': 'index', 'status': _verdict(index == euler),
                        'expected': str(euler), 'actual': str(index)}])

    def _run(self, name: str, check: Callable[[], Dict]) -> Dict:
        """Run one check; a library error counts as a failure"""
        try:
            result = check()
            status = VERDICT_PASS if result['failed'] == 0 else VERDICT_FAIL
            entry = {'name': name, 'status': status, 'checked': result['total']}
            if status == VERDICT_FAIL:
                entry['details'] = [d for d in result['details'] if d['status'] == VERDICT_FAIL]
        except (EquilefError, AssertionError) as e:
            logger.error("%s raised %s", name, e)
            entry = {'name': name, 'status': VERDICT_FAIL, 'error': str(e)}
        return entry

    def suite(self, progress_callback: Optional[Callable] = None) -> Dict:
        """
        Run every identity over the fixtures and the seeded corpus.

        Args:
            progress_callback: Called with (section, current, total)

        Returns:
            Section name -> {passed, failed, total, details}, plus overall counts
        """
        settings = self.config['verification']
        names = settings['corpus']
        seed = int(settings['seed'])
        sections: Dict[str, List[Dict]] = {}

        def report(section: str, entries: List[Dict]):
            sections[section] = entries
            if progress_callback:
                progress_callback(section, len(sections), 8)

        fixtures = FixtureManager.complexes()
        entries = []
        for fixture in fixtures:
            X = fixture.complex
            entries.append(self._run(f"{fixture.name}: identity", lambda X=X: self.identity_check(X)))
            entries.append(self._run(f"{fixture.name}: character_euler", lambda X=X: self.character_euler(X)))
            if fixture.fixed_points:
                entries.append(self._run(f"{fixture.name}: agree", lambda fx=fixture: _tally([{
                    'name': 'agree', 'status': self.verify_agree(fx.complex, fx.map, fx.fixed_points)['verdict']}])))
                entries.append(self._run(f"{fixture.name}: character_local",
                                         lambda fx=fixture: self.character_local(fx.complex, fx.fixed_points)))
                entries.append(self._run(f"{fixture.name}: orbifold_fixed_points",
                                         lambda fx=fixture: self.orbifold_fixed_points(fx.map, fx.fixed_points)))
            if fixture.zeros:
                entries.append(self._run(f"{fixture.name}: index",
                                         lambda fx=fixture: self.index_check(fx.complex, fx.zeros)))
        report('fixtures', entries)

        entries = []
        for r in range(1, 9):
            for delta0 in (1, -1):
                P = dihedral_presentation(r, delta0)
                entries.append(self._run(P.name + f" delta0={delta0}", lambda P=P: _tally([{
                    'name': 'index', 'status': self.verify_presented(P)['verdict']}])))
        report('dihedral', entries)

        triples = random_triples(names, int(settings['triples_per_group']), seed)
        lefschetz_rows, euler_rows, characters, traces = [], [], [], []
        for n, (group, X, f) in enumerate(triples):
            tag = f"{group.name}#{n}"
            basis = enumerate_classes(X)
            lefschetz_rows.append(self._run(tag, lambda f=f, basis=basis: self.character_lefschetz(f, basis)))
            euler_rows.append(self._run(tag, lambda X=X, basis=basis: self.character_euler(X, basis)))
            characters.append(self._run(tag, lambda X=X, basis=basis: self.character_checks(X, basis)))
            traces.append(self._run(tag, lambda f=f: self.trace_checks(f)))
        report('character_lefschetz', lefschetz_rows)
        report('character_euler', euler_rows)
        report('characters', characters)
        report('traces', traces)

        rng = np.random.default_rng(seed + 1)
        entries = []
        for name in names:
            group = standard_group(name)
            for k in range(int(settings['realization_sets_per_group'])):
                S = random_orbit_set(group, rng)
                entries.append(self._run(f"{name}#{k}", lambda S=S: _tally([{
                    'name': 'realize', 'status': _verdict(self._realizes(S))}])))
        report('realization', entries)

        entries = []
        for name in ('Z2', 'Z3', 'S3'):
            H = standard_group(name)
            for chi in range(-2, 6):
                entries.append(self._run(f"{name} chi={chi}", lambda H=H, chi=chi: _tally([{
                    'name': 'induction', 'status': _verdict(
                        multiplicative_induction_euler(H, chi).coeffs[-1] == chi)}])))
        report('multiplicative_induction', entries)

        results = {name: _tally(items) for name, items in sections.items()}
        results['overall'] = {
            'passed': sum(r['passed'] for r in results.values()),
            'failed': sum(r['failed'] for r in results.values()),
        }
        results['overall']['total'] = results['overall']['passed'] + results['overall']['failed']
        logger.info("suite: %d passed, %d failed", results['overall']['passed'], results['overall']['failed'])
        self.results.append(results)
        return results

    @staticmethod
    def _realizes(S) -> bool:
        X = realize_orbit_set(S)
        return X.dim <= 1 and verify_realization(X, S)
