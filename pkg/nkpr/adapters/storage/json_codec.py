"""JSON encodings of the domain objects.

Matrices travel as {"rows": n, "cols": m, "entries": [[re, im], ...]} in
row-major order; every other document embeds that form. Decoders raise
MalformedDocumentError for shape problems and let the domain constructors
raise their own errors for values that are well formed but invalid (a
non-positive density matrix is a domain error, not a file error).
"""
from __future__ import annotations

from typing import Any, Dict

import numpy as np

from nkpr.errors import MalformedDocumentError
from nkpr.models.classes import ClassificationResult, ClassModel, Member, QuantumClass
from nkpr.models.learning import ChannelSpec, LearningScenario, LearningStep, LearningTrace, TomographyResult
from nkpr.models.lattice import AxiomReport, DistributivityReport, OrthomodularityReport
from nkpr.models.matrix import ComplexMatrix, as_matrix
from nkpr.models.states import DensityOperator, PovmMeasurement


def _field(doc: Any, key: str, kind: Any, where: str) -> Any:
    if not isinstance(doc, dict):
        raise MalformedDocumentError(f'{where} must be a JSON object')
    if key not in doc:
        raise MalformedDocumentError(f'{where} is missing "{key}"')
    value = doc[key]
    # bool is an int subclass; never accept it where a number is expected
    if not isinstance(value, kind) or (isinstance(value, bool) and bool not in _as_tuple(kind)):
        raise MalformedDocumentError(f'{where}: "{key}" has the wrong type ({type(value).__name__})')
    return value


def _as_tuple(kind: Any) -> tuple:
    return kind if isinstance(kind, tuple) else (kind,)


def _is_matrix_doc(value: Any) -> bool:
    return isinstance(value, dict) and 'entries' in value


# --- matrices ---------------------------------------------------------------

def decode_matrix(doc: Any, where: str = 'matrix') -> ComplexMatrix:
    rows = _field(doc, 'rows', int, where)
    cols = _field(doc, 'cols', int, where)
    entries = _field(doc, 'entries', list, where)
    if rows < 1 or cols < 1:
        raise MalformedDocumentError(f'{where}: rows and cols must be positive')
    if len(entries) != rows * cols:
        raise MalformedDocumentError(f'{where}: expected {rows * cols} entries, got {len(entries)}')
    values = []
    for k, pair in enumerate(entries):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
            raise MalformedDocumentError(f'{where}: entry {k} must be [re, im]')
        values.append(complex(pair[0], pair[1]))
    return as_matrix(np.array(values, dtype=np.complex128).reshape(rows, cols))


def encode_matrix(m: Any) -> Dict[str, Any]:
    arr = np.asarray(m, dtype=np.complex128)
    return {
        'rows': int(arr.shape[0]),
        'cols': int(arr.shape[1]),
        'entries': [[float(z.real), float(z.imag)] for z in arr.reshape(-1)],
    }


# --- states and measurements -------------------------------------------------

def decode_density(doc: Any, where: str = 'state') -> DensityOperator:
    dim = _field(doc, 'dim', int, where)
    m = decode_matrix(_field(doc, 'matrix', dict, where), f'{where}.matrix')
    if m.shape != (dim, dim):
        raise MalformedDocumentError(f'{where}: dim is {dim} but the matrix is {m.shape[0]}x{m.shape[1]}')
    return DensityOperator(m)


def encode_density(rho: DensityOperator) -> Dict[str, Any]:
    return {'dim': rho.dim, 'matrix': encode_matrix(rho.matrix)}


def decode_povm(doc: Any, where: str = 'povm') -> PovmMeasurement:
    effects = _field(doc, 'effects', list, where)
    if not effects:
        raise MalformedDocumentError(f'{where}: "effects" is empty')
    mats = [decode_matrix(e, f'{where}.effects[{k}]') for k, e in enumerate(effects)]
    labels = doc.get('labels', [])
    if not isinstance(labels, list):
        raise MalformedDocumentError(f'{where}: "labels" must be a list')
    return PovmMeasurement(tuple(mats), tuple(str(label) for label in labels))


def encode_povm(m: PovmMeasurement) -> Dict[str, Any]:
    return {'effects': [encode_matrix(e.matrix) for e in m.effects], 'labels': list(m.labels)}


def decode_counts(doc: Any, where: str = 'counts') -> Dict[str, int]:
    """Outcome counts, either flat {label: n} or wrapped as {"counts": {...}}."""
    if isinstance(doc, dict) and isinstance(doc.get('counts'), dict):
        doc = doc['counts']
    if not isinstance(doc, dict):
        raise MalformedDocumentError(f'{where} must be a JSON object')
    counts = {}
    for label, n in doc.items():
        if not isinstance(n, int) or isinstance(n, bool):
            raise MalformedDocumentError(f'{where}: count for {label!r} must be an integer')
        counts[str(label)] = n
    return counts


# --- class models ------------------------------------------------------------

def decode_model(doc: Any, where: str = 'model') -> ClassModel:
    dim = _field(doc, 'dim', int, where)
    classes = []
    for i, c in enumerate(_field(doc, 'classes', list, where)):
        at = f'{where}.classes[{i}]'
        members = []
        for j, m in enumerate(_field(c, 'members', list, at)):
            weight = _field(m, 'weight', (int, float), f'{at}.members[{j}]')
            state = decode_density(_field(m, 'state', dict, f'{at}.members[{j}]'), f'{at}.members[{j}].state')
            if state.dim != dim:
                raise MalformedDocumentError(f'{at}.members[{j}]: state has dimension {state.dim}, model declares {dim}')
            members.append(Member(weight=float(weight), state=state))
        classes.append(QuantumClass(name=str(_field(c, 'name', str, at)),
                                    prior=float(_field(c, 'prior', (int, float), at)),
                                    members=tuple(members)))
    return ClassModel(tuple(classes))


def encode_model(model: ClassModel) -> Dict[str, Any]:
    return {
        'dim': model.dim,
        'classes': [{'name': c.name, 'prior': c.prior,
                     'members': [{'weight': m.weight, 'state': encode_density(m.state)} for m in c.members]}
                    for c in model.classes],
    }


# --- learning scenarios -------------------------------------------------------

def _decode_param(value: Any, where: str) -> Any:
    """Matrix documents (alone or in a list) become matrices; anything else passes through."""
    if _is_matrix_doc(value):
        return decode_matrix(value, where)
    if isinstance(value, list) and value and all(_is_matrix_doc(v) for v in value):
        return [decode_matrix(v, f'{where}[{k}]') for k, v in enumerate(value)]
    return value


def decode_channel_spec(doc: Any, where: str = 'channel') -> ChannelSpec:
    name = _field(doc, 'name', str, where)
    params = doc.get('params', {})
    if not isinstance(params, dict):
        raise MalformedDocumentError(f'{where}: "params" must be an object')
    return ChannelSpec(name, {k: _decode_param(v, f'{where}.params.{k}') for k, v in params.items()})


def decode_scenario(doc: Any, where: str = 'scenario') -> LearningScenario:
    initial = decode_density(_field(doc, 'initial', dict, where), f'{where}.initial')
    steps = []
    raw_steps = _field(doc, 'steps', list, where) if 'steps' in doc else []
    for k, step in enumerate(raw_steps):
        at = f'{where}.steps[{k}]'
        time = _field(step, 'time', (int, float), at)
        steps.append(LearningStep(time=float(time), channel=decode_channel_spec(_field(step, 'channel', dict, at),
                                                                                f'{at}.channel')))
    dims = doc.get('dims')
    if dims is not None and (not isinstance(dims, list)
                             or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims)):
        raise MalformedDocumentError(f'{where}: "dims" must be a list of integers')
    entropy = doc.get('entropy', 'von_neumann')
    if not isinstance(entropy, str):
        raise MalformedDocumentError(f'{where}: "entropy" must be a string')
    return LearningScenario(initial=initial, steps=tuple(steps),
                            dims=tuple(dims) if dims is not None else None, entropy=entropy)


# --- results ----------------------------------------------------------------

def encode_result(result: ClassificationResult) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        'posteriors': list(result.posteriors),
        'decided': result.decided,
        'class': result.decided_name,
        'mode': result.mode,
    }
    if result.names:
        doc['names'] = list(result.names)
    if result.metric is not None:
        doc['metric'] = result.metric
        doc['scores'] = list(result.scores)
    return doc


def encode_trace(trace: LearningTrace, entropy: str) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        'entropy_measure': entropy,
        'times': list(trace.times),
        'entropies': list(trace.entropies),
        'success': trace.success,
        'final_state': encode_density(trace.states[-1]),
    }
    if trace.marginal_entropies:
        doc['marginal_entropies'] = [list(row) for row in trace.marginal_entropies]
    return doc


def encode_tomography(result: TomographyResult, frobenius_error: float) -> Dict[str, Any]:
    return {
        'estimate': encode_density(result.estimate),
        'frobenius_error': frobenius_error,
        'shots_used': result.shots_used,
    }


def encode_lattice_report(axioms: AxiomReport, ortho: OrthomodularityReport,
                          distributivity: DistributivityReport) -> Dict[str, Any]:
    return {
        'normalization': axioms.normalization,
        'additivity_max': axioms.additivity_max,
        'orthomodular_failures': ortho.failures,
        'orthomodular_checked': ortho.checked,
        'distributivity_violations': distributivity.violations,
        'distributivity_checked': distributivity.checked,
        'passed': axioms.passed and ortho.passed,
    }


def encode_error(error: BaseException) -> Dict[str, Any]:
    return {'error': {'type': type(error).__name__, 'message': str(error)}}
