"""
Workbench: spec files, command dispatch and report rendering

Reads the sparse ``.pbx`` text format, runs one command against the algebra
modules and renders the outcome as a machine (JSON) or human (table) report.
"""

import hashlib
import json
import logging
import re
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config import config
from models.report_schema import Report, format_scalar
from models.workbench_schema import (
    CheckResult,
    MatrixEntry,
    ReportDocument,
    TensorEntry,
    WorkbenchSpec,
    validate_report_json,
    validate_spec_dict,
)
from modules.bialgebra_yb import (
    BialgebraSpec,
    Classification,
    RLabel,
    RMatrixData,
    check_poisson_bialgebra,
    classify_r,
    coboundary_bialgebra,
    coboundary_maps,
    drinfeld_double,
)
from modules.diff_asi import (
    DiffASIBialgebra,
    DiffAlgebra,
    DiffCoalgebra,
    check_diff_algebra,
    check_diff_asi_bialgebra,
    check_symmetric_rb_frobenius,
    classify_diff_r,
    cross_compatibility_report,
    diff_drinfeld_double,
    diff_rb_to_r,
    diff_r_to_rb,
    induce_poisson_bialgebra,
    induced_poisson_algebra,
    induced_qrb_check,
    psi_admissible_aybe,
)
from modules.exact_linear import Matrix, Tensor3, TwoTensor, normalize, to_scalar
from modules.poisson_core import AlgebraSpec, BilinearFormData, check_poisson, check_quadratic
from modules.rota_baxter import (
    RotaBaxterData,
    check_quadratic_rb,
    check_rb_operator,
    diagram_check,
    factorizable_descendent_iso,
    factorizable_to_qrb,
    qrb_to_factorizable,
    tilde_operator,
)
from utils.error_handler import DimMismatch, IndexOutOfRange, MissingInput, SpecParseError

logger = logging.getLogger(__name__)

COMMANDS = ["check", "classify", "double", "convert", "induce", "report"]

TENSOR_SECTIONS = ["bracket", "product", "delta", "coproduct"]
MATRIX_SECTIONS = {"r": "r", "P": "p", "B": "b"}
INDEXED_SECTIONS = ["phi", "psi"]
DIRECTIVES = ["field", "dim", "basis", "flags", "weight"]


# ============================================================================
# PARSING
# ============================================================================

def input_digest(text: str) -> str:
    """SHA256 of the input text"""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _diag(line: int, column: int, reason: str, **extra) -> Dict[str, Any]:
    return {"line": line, "column": column, "reason": reason, **extra}


def _is_index(token: str) -> bool:
    return re.fullmatch(r"[0-9]+", token) is not None


def _parse_rational(token: str) -> Fraction:
    if not re.fullmatch(r"[+-]?[0-9]+(/[0-9]+)?", token):
        raise ValueError(f"not a rational literal: {token!r}")
    return to_scalar(token)


class _SpecReader:
    """Line-by-line reader collecting located diagnostics"""

    def __init__(self):
        self.diagnostics: List[Dict[str, Any]] = []
        self.warnings: List[str] = []
        self.fields: Dict[str, Any] = {}
        self.dim: Optional[int] = None
        self.section: Optional[Tuple[str, int]] = None
        self.sections: Dict[Tuple[str, int], Dict[Tuple[int, ...], Fraction]] = {}

    def directive(self, line_no: int, tokens: List[Tuple[str, int]]) -> None:
        word, col = tokens[0]
        args = tokens[1:]
        if word == "basis":
            self.fields["basis"] = [t for t, _ in args]
            return
        if word == "flags":
            for flag, flag_col in args:
                if flag not in config.SPEC_FLAGS:
                    self.diagnostics.append(_diag(line_no, flag_col, f"unknown flag {flag!r}"))
                else:
                    self.fields[flag] = True
            return
        if len(args) != 1:
            self.diagnostics.append(_diag(line_no, col, f"'{word}' takes exactly one value"))
            return
        value, value_col = args[0]
        if word == "field":
            if value != config.FIELD_TAG:
                self.diagnostics.append(_diag(line_no, value_col, f"unsupported field {value!r}"))
            self.fields["field"] = value
        elif word == "dim":
            if self.dim is not None:
                self.diagnostics.append(_diag(line_no, col, "dim declared twice"))
            elif not _is_index(value) or not 1 <= int(value) <= config.MAX_DIM:
                self.diagnostics.append(_diag(line_no, value_col, f"dim must be an integer in 1..{config.MAX_DIM}"))
            else:
                self.dim = int(value)
                self.fields["dim"] = self.dim
        elif word == "weight":
            try:
                self.fields["weight"] = format_scalar(_parse_rational(value))
            except (ValueError, ZeroDivisionError) as e:
                self.diagnostics.append(_diag(line_no, value_col, str(e)))

    def open_section(self, line_no: int, tokens: List[Tuple[str, int]]) -> None:
        word, col = tokens[0]
        slot = 0
        if word in INDEXED_SECTIONS:
            if len(tokens) != 2 or not _is_index(tokens[1][0]):
                self.diagnostics.append(_diag(line_no, col, f"'{word}' needs a derivation index"))
                self.section = None
                return
            slot = int(tokens[1][0])
        elif len(tokens) != 1:
            self.diagnostics.append(_diag(line_no, tokens[1][1], f"unexpected text after '{word}'"))
        key = (MATRIX_SECTIONS.get(word, word), slot)
        if key in self.sections:
            self.warnings.append(f"line {line_no}: section '{word}' repeated; entries merged")
        self.sections.setdefault(key, {})
        self.section = key

    def entry(self, line_no: int, tokens: List[Tuple[str, int]]) -> None:
        if self.section is None:
            self.diagnostics.append(_diag(line_no, tokens[0][1], "entry outside a section"))
            return
        if self.dim is None:
            self.diagnostics.append(_diag(line_no, tokens[0][1], "dim must be declared before entries"))
            return
        arity = 3 if self.section[0] in TENSOR_SECTIONS else 2
        if len(tokens) != arity + 1:
            self.diagnostics.append(_diag(line_no, tokens[0][1], f"expected {arity} indices and a value"))
            return
        indices = []
        for token, col in tokens[:arity]:
            if not _is_index(token):
                self.diagnostics.append(_diag(line_no, col, f"bad index {token!r}"))
                return
            if int(token) >= self.dim:
                self.diagnostics.append(_diag(line_no, col, f"index {token} out of range",
                                              index=int(token), dim=self.dim))
                return
            indices.append(int(token))
        value_token, value_col = tokens[arity]
        try:
            value = _parse_rational(value_token)
        except (ValueError, ZeroDivisionError) as e:
            self.diagnostics.append(_diag(line_no, value_col, str(e)))
            return
        bucket = self.sections[self.section]
        key = tuple(indices)
        if key in bucket:
            message = f"line {line_no}: duplicate entry {key} in '{self.section[0]}' summed"
            logger.warning(message)
            self.warnings.append(message)
        bucket[key] = bucket.get(key, Fraction(0)) + value

    def to_dict(self) -> Dict[str, Any]:
        data = dict(self.fields)
        data["warnings"] = list(self.warnings)
        indexed: Dict[str, Dict[int, list]] = {"phi": {}, "psi": {}}
        for (name, slot), bucket in self.sections.items():
            if name in TENSOR_SECTIONS:
                entries = [{"i": i, "j": j, "k": k, "value": v} for (i, j, k), v in sorted(bucket.items()) if v != 0]
            else:
                entries = [{"i": i, "j": j, "value": v} for (i, j), v in sorted(bucket.items()) if v != 0]
            if name in INDEXED_SECTIONS:
                indexed[name][slot] = entries
            else:
                data[name] = entries
        for name, slots in indexed.items():
            if slots:
                data[name] = [slots.get(k, []) for k in range(max(slots) + 1)]
        return data


def parse_spec(text: str) -> WorkbenchSpec:
    """
    Parse spec text

    Raises:
        IndexOutOfRange: when an out-of-range index is the only problem
        SpecParseError: with every located diagnostic otherwise
    """
    reader = _SpecReader()
    header_seen = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        if not header_seen:
            header_seen = True
            if " ".join(t for t, _ in tokens) != config.SPEC_HEADER:
                reader.diagnostics.append(_diag(line_no, tokens[0][1], f"expected header '{config.SPEC_HEADER}'"))
            continue
        word = tokens[0][0]
        if word in DIRECTIVES:
            reader.directive(line_no, tokens)
        elif word in TENSOR_SECTIONS or word in MATRIX_SECTIONS or word in INDEXED_SECTIONS:
            reader.open_section(line_no, tokens)
        else:
            reader.entry(line_no, tokens)

    if not header_seen:
        reader.diagnostics.append(_diag(1, 1, "empty spec"))
    elif reader.dim is None and not any("dim" in d["reason"] for d in reader.diagnostics):
        reader.diagnostics.append(_diag(1, 1, "missing 'dim' directive"))

    diagnostics = reader.diagnostics
    if len(diagnostics) == 1 and "index" in diagnostics[0]:
        first = diagnostics[0]
        raise IndexOutOfRange(first["index"], first["dim"], first["line"], first["column"])
    if diagnostics:
        raise SpecParseError(diagnostics)

    is_valid, spec, errors = validate_spec_dict(reader.to_dict())
    if not is_valid:
        raise SpecParseError([_diag(0, 0, error) for error in errors])
    return spec


def read_source(source: Union[str, Path]) -> Tuple[str, str]:
    """(text, label) for a path or literal spec text"""
    if isinstance(source, Path) or "\n" not in source:
        path = Path(source)
        return path.read_text(encoding="utf-8"), str(path)
    return source, "<text>"


def load_spec(source: Union[str, Path]) -> WorkbenchSpec:
    """Load a spec from a file path or from spec text."""
    text, label = read_source(source)
    spec = parse_spec(text)
    logger.info(f"load_spec {label}: dim={spec.dim} warnings={len(spec.warnings)}")
    return spec


# ============================================================================
# SERIALIZATION
# ============================================================================

def _entry_lines(entries: Sequence) -> List[str]:
    rows = []
    for e in entries:
        if Fraction(e.value) == 0:
            continue
        if isinstance(e, TensorEntry):
            rows.append(((e.i, e.j, e.k), f"{e.i} {e.j} {e.k} {e.value}"))
        else:
            rows.append(((e.i, e.j), f"{e.i} {e.j} {e.value}"))
    return [line for _, line in sorted(rows)]


def serialize_spec(spec: WorkbenchSpec) -> str:
    """Canonical text: fixed section order, lexicographic entries, zeros dropped."""
    lines = [config.SPEC_HEADER, f"field {spec.field}", f"dim {spec.dim}", "basis " + " ".join(spec.basis)]
    flags = [flag for flag in config.SPEC_FLAGS if getattr(spec, flag)]
    if flags:
        lines.append("flags " + " ".join(flags))
    if spec.weight is not None:
        lines.append(f"weight {spec.weight}")
    for name in TENSOR_SECTIONS:
        entries = getattr(spec, name)
        if entries is None:
            continue
        lines.append(name)
        lines.extend(_entry_lines(entries))
    for word, attr in MATRIX_SECTIONS.items():
        entries = getattr(spec, attr)
        if entries is None:
            continue
        lines.append(word)
        lines.extend(_entry_lines(entries))
    for name in INDEXED_SECTIONS:
        for k, entries in enumerate(getattr(spec, name)):
            lines.append(f"{name} {k}")
            lines.extend(_entry_lines(entries))
    return "\n".join(lines) + "\n"


def _tensor_entries(t: Optional[Tensor3]) -> Optional[List[TensorEntry]]:
    if t is None:
        return None
    return [TensorEntry(i=int(i), j=int(j), k=int(k), value=t[i, j, k]) for (i, j, k) in zip(*np.nonzero(t != 0))]


def _matrix_entries(m: Optional[Matrix]) -> Optional[List[MatrixEntry]]:
    if m is None:
        return None
    return [MatrixEntry(i=int(i), j=int(j), value=m[i, j]) for (i, j) in zip(*np.nonzero(m != 0))]


def spec_from_structures(
    basis: Sequence[str],
    bracket: Optional[Tensor3] = None,
    product: Optional[Tensor3] = None,
    delta: Optional[Tensor3] = None,
    coproduct: Optional[Tensor3] = None,
    r: Optional[RMatrixData] = None,
    rb: Optional[RotaBaxterData] = None,
    phi: Sequence[Matrix] = (),
    psi: Sequence[Matrix] = (),
    commutative: bool = False,
    cocommutative: bool = False,
) -> WorkbenchSpec:
    """Spec for computed structures, ready to serialize."""
    n = len(basis)
    return WorkbenchSpec(
        dim=n,
        basis=list(basis),
        commutative=commutative,
        cocommutative=cocommutative,
        weight=None if rb is None else rb.weight,
        bracket=_tensor_entries(bracket) or [],
        product=_tensor_entries(product) or [],
        delta=_tensor_entries(delta),
        coproduct=_tensor_entries(coproduct),
        r=None if r is None else _matrix_entries(r.entries),
        p=None if rb is None else _matrix_entries(rb.p),
        b=None if rb is None or rb.form is None else _matrix_entries(rb.form.b),
        phi=[_matrix_entries(m) for m in phi],
        psi=[_matrix_entries(m) for m in psi],
    )


# ============================================================================
# SPEC -> STRUCTURES
# ============================================================================

def _tensor(entries: Optional[Sequence[TensorEntry]], n: int) -> Tensor3:
    t = np.zeros((n, n, n), dtype=object)
    for e in entries or []:
        t[e.i, e.j, e.k] += Fraction(e.value)
    return normalize(t)


def _matrix(entries: Optional[Sequence[MatrixEntry]], n: int) -> Matrix:
    m = np.zeros((n, n), dtype=object)
    for e in entries or []:
        m[e.i, e.j] += Fraction(e.value)
    return normalize(m)


def algebra_from_spec(spec: WorkbenchSpec) -> AlgebraSpec:
    return AlgebraSpec(_tensor(spec.bracket, spec.dim), _tensor(spec.product, spec.dim), tuple(spec.basis))


def bialgebra_from_spec(spec: WorkbenchSpec) -> BialgebraSpec:
    n = spec.dim
    return BialgebraSpec(algebra_from_spec(spec), _tensor(spec.delta, n), _tensor(spec.coproduct, n))


def rmatrix_from_spec(spec: WorkbenchSpec, command: str) -> RMatrixData:
    if spec.r is None:
        raise MissingInput(command, "r")
    return RMatrixData(TwoTensor(_matrix(spec.r, spec.dim)))


def _weight(spec: WorkbenchSpec, command: str, override: Optional[str]) -> Fraction:
    value = override if override is not None else spec.weight
    if value is None:
        raise MissingInput(command, "weight")
    return to_scalar(value)


def rb_from_spec(spec: WorkbenchSpec, command: str, weight: Optional[str] = None,
                 need_form: bool = False) -> RotaBaxterData:
    if spec.p is None:
        raise MissingInput(command, "P")
    if need_form and spec.b is None:
        raise MissingInput(command, "B")
    form = None if spec.b is None else BilinearFormData(_matrix(spec.b, spec.dim))
    return RotaBaxterData(_matrix(spec.p, spec.dim), _weight(spec, command, weight), form)


def diff_algebra_from_spec(spec: WorkbenchSpec) -> DiffAlgebra:
    phi = tuple(_matrix(entries, spec.dim) for entries in spec.phi)
    return DiffAlgebra.from_product(_tensor(spec.product, spec.dim), phi, spec.commutative, tuple(spec.basis))


def _psi(spec: WorkbenchSpec, command: str) -> Tuple[Matrix, ...]:
    if not spec.psi:
        raise MissingInput(command, "psi")
    return tuple(_matrix(entries, spec.dim) for entries in spec.psi)


def diff_bialgebra_from_spec(spec: WorkbenchSpec, command: str) -> DiffASIBialgebra:
    coalg = DiffCoalgebra(_tensor(spec.coproduct, spec.dim), _psi(spec, command), spec.cocommutative)
    return DiffASIBialgebra(diff_algebra_from_spec(spec), coalg)


# ============================================================================
# COMMANDS
# ============================================================================

Outcome = Tuple[List[Report], Optional[Classification], Optional[WorkbenchSpec]]


def _run_check(spec: WorkbenchSpec, options: Dict[str, Any]) -> Outcome:
    reports = []
    if spec.phi:
        d = diff_algebra_from_spec(spec)
        reports.append(check_diff_algebra(d))
        if spec.psi:
            b = diff_bialgebra_from_spec(spec, "check")
            reports.append(check_diff_asi_bialgebra(b))
            if d.m == 2:
                reports.append(cross_compatibility_report(b))
        if d.m == 2 and d.commutative:
            reports.append(check_poisson(induced_poisson_algebra(d), "induced_poisson"))
        if spec.p is not None and spec.b is not None:
            reports.append(check_symmetric_rb_frobenius(d, rb_from_spec(spec, "check", options.get("weight"))))
        return reports, None, None

    a = algebra_from_spec(spec)
    reports.append(check_poisson(a))
    if spec.delta is not None or spec.coproduct is not None:
        reports.append(check_poisson_bialgebra(bialgebra_from_spec(spec)))
    if spec.b is not None:
        reports.append(check_quadratic(a, BilinearFormData(_matrix(spec.b, spec.dim))))
    if spec.p is not None:
        rb = rb_from_spec(spec, "check", options.get("weight"))
        reports.append(check_rb_operator(a, rb) if rb.form is None else check_quadratic_rb(a, rb))
    return reports, None, None


def _run_classify(spec: WorkbenchSpec, options: Dict[str, Any]) -> Outcome:
    r = rmatrix_from_spec(spec, "classify")
    if spec.phi:
        d = diff_algebra_from_spec(spec)
        psi = _psi(spec, "classify")
        return [psi_admissible_aybe(d, psi, r)], classify_diff_r(d, psi, r), None
    a = algebra_from_spec(spec)
    cls = classify_r(a, r)
    reports = []
    if cls.label.is_quasi_triangular():
        reports.append(check_poisson_bialgebra(coboundary_bialgebra(a, r)))
    return reports, cls, None


def _run_double(spec: WorkbenchSpec, options: Dict[str, Any]) -> Outcome:
    if 2 * spec.dim > config.MAX_DIM:
        raise DimMismatch(f"double of dimension {2 * spec.dim} exceeds the limit {config.MAX_DIM}")
    if spec.phi:
        double, r = diff_drinfeld_double(diff_bialgebra_from_spec(spec, "double"))
        cls = classify_diff_r(double.diff_alg, double.psi, r)
        emitted = spec_from_structures(
            double.diff_alg.alg.basis_names, product=double.diff_alg.product, coproduct=double.coproduct,
            r=r, phi=double.diff_alg.phi, psi=double.psi,
            commutative=double.diff_alg.commutative, cocommutative=double.diff_coalg.cocommutative,
        )
        reports = [check_diff_asi_bialgebra(double)]
    else:
        double_alg, r, cls = drinfeld_double(bialgebra_from_spec(spec))
        delta, coproduct = coboundary_maps(double_alg, r)
        emitted = spec_from_structures(
            double_alg.basis_names, bracket=double_alg.bracket, product=double_alg.product,
            delta=delta, coproduct=coproduct, r=r,
            commutative=spec.commutative, cocommutative=spec.cocommutative,
        )
        reports = [check_poisson_bialgebra(BialgebraSpec(double_alg, delta, coproduct))]
    label = Report(name="double")
    label.require("factorizable", cls.label == RLabel.FACTORIZABLE)
    return reports + [label], cls, emitted


def _with_r(spec: WorkbenchSpec, r: RMatrixData, psi: Sequence[Matrix] = ()) -> WorkbenchSpec:
    update: Dict[str, Any] = {"r": _matrix_entries(r.entries)}
    if psi:
        update["psi"] = [_matrix_entries(m) for m in psi]
    return spec.model_copy(update=update)


def _with_rb(spec: WorkbenchSpec, rb: RotaBaxterData) -> WorkbenchSpec:
    update: Dict[str, Any] = {"p": _matrix_entries(rb.p), "weight": format_scalar(rb.weight)}
    if rb.form is not None:
        update["b"] = _matrix_entries(rb.form.b)
    return spec.model_copy(update=update)


def _run_convert(spec: WorkbenchSpec, options: Dict[str, Any]) -> Outcome:
    direction = options.get("direction")
    if direction is None:
        raise MissingInput("convert", "direction")
    weight = options.get("weight")

    if direction == "rb2fact":
        rb = rb_from_spec(spec, "convert", weight, need_form=True)
        if spec.phi:
            d = diff_algebra_from_spec(spec)
            r, psi, cls = diff_rb_to_r(d, rb)
            return [check_symmetric_rb_frobenius(d, rb)], cls, _with_r(spec, r, psi)
        a = algebra_from_spec(spec)
        r = qrb_to_factorizable(a, rb)
        return [check_quadratic_rb(a, rb)], classify_r(a, r), _with_r(spec, r)

    if direction == "fact2rb":
        r = rmatrix_from_spec(spec, "convert")
        value = _weight(spec, "convert", weight)
        if spec.phi:
            d = diff_algebra_from_spec(spec)
            psi = _psi(spec, "convert")
            rb, report = diff_r_to_rb(d, psi, r, value)
            reports = [report]
            if d.m == 2 and d.commutative:
                reports.append(induced_qrb_check(d, rb))
            return reports, classify_diff_r(d, psi, r), _with_rb(spec, rb)
        a = algebra_from_spec(spec)
        rb = factorizable_to_qrb(a, r, value)
        reports = [check_quadratic_rb(a, rb), factorizable_descendent_iso(a, r, value), diagram_check(a, r, value)]
        return reports, classify_r(a, r), _with_rb(spec, rb)

    if direction == "tilde":
        rb = rb_from_spec(spec, "convert", weight)
        tilde = tilde_operator(rb)
        a = algebra_from_spec(spec)
        report = check_rb_operator(a, tilde) if tilde.form is None else check_quadratic_rb(a, tilde)
        return [report], None, _with_rb(spec, tilde)

    if direction == "tau":
        r = rmatrix_from_spec(spec, "convert")
        flipped = r.flip()
        if spec.phi:
            d = diff_algebra_from_spec(spec)
            return [], classify_diff_r(d, _psi(spec, "convert"), flipped), _with_r(spec, flipped)
        a = algebra_from_spec(spec)
        reports = []
        value = weight if weight is not None else spec.weight
        if value is not None and to_scalar(value) != 0 and classify_r(a, r).label == RLabel.FACTORIZABLE:
            reports.append(diagram_check(a, r, value))
        return reports, classify_r(a, flipped), _with_r(spec, flipped)

    raise ValueError(f"unknown direction {direction!r}; expected one of {config.CONVERT_DIRECTIONS}")


def _run_induce(spec: WorkbenchSpec, options: Dict[str, Any]) -> Outcome:
    if not spec.phi:
        raise MissingInput("induce", "phi")
    b = diff_bialgebra_from_spec(spec, "induce")
    r = rmatrix_from_spec(spec, "induce")
    pb, cls, diagrams = induce_poisson_bialgebra(b, r)
    emitted = spec_from_structures(
        pb.alg.basis_names, bracket=pb.alg.bracket, product=pb.alg.product,
        delta=pb.cobracket, coproduct=pb.coproduct, r=r,
        commutative=True, cocommutative=True,
    )
    return [diagrams, check_poisson_bialgebra(pb)], cls, emitted


def _run_report(spec: WorkbenchSpec, options: Dict[str, Any]) -> Outcome:
    reports, _, _ = _run_check(spec, options)
    if spec.r is None or (spec.phi and not spec.psi):
        return reports, None, None
    more, cls, _ = _run_classify(spec, options)
    return reports + more, cls, None


_DISPATCH: Dict[str, Callable[[WorkbenchSpec, Dict[str, Any]], Outcome]] = {
    "check": _run_check,
    "classify": _run_classify,
    "double": _run_double,
    "convert": _run_convert,
    "induce": _run_induce,
    "report": _run_report,
}


def classification_evidence(cls: Classification) -> Dict[str, Any]:
    return {
        "label": cls.label.value,
        "rank_s": cls.rank_s,
        "conditions": dict(cls.conditions),
        "flags": dict(cls.flags),
        "coboundary_form": cls.coboundary_form,
    }


def run_command(command: str, spec: WorkbenchSpec, direction: Optional[str] = None,
                weight: Optional[str] = None, digest: Optional[str] = None) -> ReportDocument:
    """
    Run one workbench command

    Args:
        command: One of COMMANDS
        spec: Parsed spec
        direction: Conversion direction for ``convert``
        weight: Rational literal overriding the spec weight
        digest: SHA256 of the input text; defaults to that of the canonical serialization

    Returns:
        ReportDocument: verdict, per-check results, classification and emitted spec
    """
    if command not in _DISPATCH:
        raise ValueError(f"unknown command {command!r}; expected one of {COMMANDS}")
    started = time.perf_counter()
    reports, cls, emitted = _DISPATCH[command](spec, {"direction": direction, "weight": weight})
    elapsed = time.perf_counter() - started

    passed = all(r.passed for r in reports)
    if cls is not None and cls.label == RLabel.NOT_SOLUTION:
        passed = False
    doc = ReportDocument(
        command=command,
        input_digest=digest or input_digest(serialize_spec(spec)),
        verdict="pass" if passed else "fail",
        checks=[CheckResult.from_report(r) for r in reports],
        classification=None if cls is None else classification_evidence(cls),
        emitted_spec=None if emitted is None else serialize_spec(emitted),
        settings=config.report_settings(),
        timing={command: round(elapsed, 6)} if config.INCLUDE_TIMING else None,
    )
    logger.info(f"run_command {command}: verdict={doc.verdict} checks={len(doc.checks)}")
    return doc


# ============================================================================
# RENDERING
# ============================================================================

def check_table(doc: ReportDocument) -> pd.DataFrame:
    """One row per check suite"""
    rows = [{"check": c.name, "verdict": "pass" if c.passed else "fail", "violations": c.total_violations}
            for c in doc.checks]
    return pd.DataFrame(rows, columns=["check", "verdict", "violations"])


def _human(doc: ReportDocument) -> str:
    lines = [f"pybx {doc.command}: {doc.verdict.upper()}", f"input sha256 {doc.input_digest}", ""]
    table = check_table(doc)
    lines.append(table.to_string(index=False) if not table.empty else "(no checks)")
    first = doc.first_violation()
    if first is not None:
        suite, violation = first
        residual = ", ".join(violation.residual)
        lines.append("")
        lines.append(f"first violation: {suite}.{violation.identity} at {tuple(violation.indices)}: [{residual}]")
    if doc.classification is not None:
        evidence = doc.classification
        lines.append("")
        lines.append(f"label {evidence['label']} (rank S = {evidence['rank_s']}, "
                     f"coboundary form {evidence['coboundary_form']})")
        for key, value in sorted(evidence["conditions"].items()):
            lines.append(f"  condition {key}: {value}")
        for key, value in sorted(evidence["flags"].items()):
            lines.append(f"  flag {key}: {value}")
    if doc.emitted_spec is not None:
        lines.append("")
        lines.append(doc.emitted_spec.rstrip("\n"))
    return "\n".join(lines) + "\n"


def emit_report(doc: ReportDocument, fmt: str = config.DEFAULT_REPORT_FORMAT) -> str:
    """Render a report document as ``machine`` JSON or a ``human`` table."""
    if fmt == "machine":
        payload = doc.model_dump(mode="json")
        if payload.get("timing") is None:
            payload.pop("timing", None)
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "human":
        return _human(doc)
    raise ValueError(f"unknown report format {fmt!r}; expected one of {config.REPORT_FORMATS}")


def render_report(text: str, fmt: str = config.DEFAULT_REPORT_FORMAT) -> Tuple[ReportDocument, str]:
    """
    Re-render a saved machine report

    Raises:
        SpecParseError: if the text is not a valid machine report
    """
    is_valid, doc, errors = validate_report_json(text)
    if not is_valid:
        raise SpecParseError([_diag(0, 0, error) for error in errors])
    return doc, emit_report(doc, fmt)
