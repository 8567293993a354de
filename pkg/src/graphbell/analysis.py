"""Measurement ingestion, Bell-value estimation, and violation reports.

Measured stabilizer expectations arrive as CSV (header
``pauli,sign,value,stderr,shots``) or an equivalent JSON array. The Bell
value is the 2^-n-weighted sum of the per-element values with errors
combined in quadrature; an omitted identity row is treated as exact
(1, 0), while a present one keeps its quoted error.

GHZ summaries (logical populations plus extreme-coherence magnitude)
feed the two inequalities directly: the graph-state value is the fidelity
(p0 + p1)/2 + coherence, the MK value is twice the coherence.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

from .errors import ValidationError
from .graphs import Graph
from .lhv import LhvBound, ghz_graph_bound, mk_bound
from .noise import NoiseSpec, depolarize_qubit, sample_expectation, subseed
from .pauli import PauliString, format_pauli, pauli_expectation, parse_pauli
from .presets import PresetSpec, preset_state, preset_stabilizer_elements
from .stabilizer import stabilizer_group

SCALING_MAX_N = 64


@dataclass(frozen=True)
class MeasurementRecord:
    """One measured signed Pauli observable."""

    word: PauliString
    value: float
    stderr: float
    shots: int | None = None

    def __post_init__(self):
        if abs(self.value) > 1.0:
            raise ValidationError(f"measured value {self.value} outside [-1, 1]")
        if self.stderr < 0:
            raise ValidationError(f"negative stderr {self.stderr}")
        if self.shots is not None and self.shots < 1:
            raise ValidationError(f"shots must be positive, got {self.shots}")


@dataclass(frozen=True)
class GhzSummary:
    """Logical populations and extreme coherence of a GHZ-type state."""

    n: int
    p0: float
    p1: float
    coherence: float
    phase: float | None = None
    p0_err: float = 0.0
    p1_err: float = 0.0
    coh_err: float = 0.0

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError(f"need n >= 2, got {self.n}")
        if self.p0 < 0 or self.p1 < 0 or self.p0 + self.p1 > 1.0 + 1e-9:
            raise ValidationError(
                f"populations p0={self.p0}, p1={self.p1} are not physical"
            )
        if self.coherence < 0 or self.coherence > math.sqrt(self.p0 * self.p1) + 1e-9:
            raise ValidationError(
                f"coherence {self.coherence} exceeds sqrt(p0*p1) bound"
            )


@dataclass(frozen=True)
class ViolationReport:
    """A Bell value against its LHV bound."""

    bell_value: float
    stderr: float
    bound: LhvBound
    relative_violation: float
    relative_stderr: float
    sigmas: float
    verdict: bool
    relative_is_lower_bound: bool

    @classmethod
    def build(cls, bell_value: float, stderr: float, bound: LhvBound) -> "ViolationReport":
        relative = bell_value / bound.value
        relative_err = stderr / bound.value
        if stderr > 0:
            sigmas = (bell_value - bound.value) / stderr
        else:
            sigmas = math.inf if bell_value != bound.value else 0.0
        return cls(
            bell_value=bell_value,
            stderr=stderr,
            bound=bound,
            relative_violation=relative,
            relative_stderr=relative_err,
            sigmas=sigmas,
            verdict=bell_value > bound.value,
            relative_is_lower_bound=bound.kind == "upper_bound",
        )

    def to_json_dict(self, graph: str | None = None) -> dict:
        out = {
            "graph": graph,
            "bell_value": self.bell_value,
            "stderr": self.stderr,
            "bound": {
                "value": self.bound.value,
                "kind": self.bound.kind,
                "method": self.bound.method,
                "exact": str(self.bound.exact) if self.bound.exact is not None else None,
            },
            "relative_violation": self.relative_violation,
            "relative_violation_stderr": self.relative_stderr,
            "relative_is_lower_bound": self.relative_is_lower_bound,
            "sigmas": self.sigmas,
            "verdict": self.verdict,
        }
        return out


def _parse_sign(token: str, where: str) -> int:
    tok = token.strip()
    if tok in ("+1", "1", "+"):
        return 1
    if tok in ("-1", "-"):
        return -1
    raise ValidationError(f"{where}: sign must be +1 or -1, got {token!r}")


def _record_from_fields(pauli, sign, value, stderr, shots, n, where) -> MeasurementRecord:
    word = parse_pauli(pauli, n)
    if word.sign == -1:
        raise ValidationError(f"{where}: put the sign in the sign column, not the word")
    if sign == -1:
        word = word.negate()
    try:
        value = float(value)
        stderr = float(stderr)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{where}: bad numeric field ({exc})") from exc
    if abs(value) > 1.0:
        raise ValidationError(f"{where}: value {value} outside [-1, 1]")
    shots_val = None
    if shots not in (None, ""):
        shots_val = int(shots)
    try:
        return MeasurementRecord(word, value, stderr, shots_val)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def load_measurements(path: str, n: int) -> list[MeasurementRecord]:
    """Read measurement records from a CSV or JSON file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read measurements file {path!r}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("[") or path.endswith(".json"):
        records = _load_measurements_json(stripped, n)
    else:
        records = _load_measurements_csv(text, n)
    if not records:
        raise ValidationError(f"no records in {path!r}")
    seen = {}
    for rec in records:
        key = (rec.word.x_bits, rec.word.z_bits)
        if key in seen:
            raise ValidationError(f"duplicate observable {rec.word.letters()}")
        seen[key] = rec
    return records


def _load_measurements_json(text: str, n: int) -> list[MeasurementRecord]:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid measurements JSON: {exc}") from exc
    if not isinstance(rows, list):
        raise ValidationError("measurements JSON must be an array of records")
    records = []
    for i, row in enumerate(rows):
        where = f"record {i}"
        sign = row.get("sign", 1)
        sign = _parse_sign(str(sign), where)
        records.append(
            _record_from_fields(
                row.get("pauli", ""), sign, row.get("value"), row.get("stderr"),
                row.get("shots"), n, where,
            )
        )
    return records


def _load_measurements_csv(text: str, n: int) -> list[MeasurementRecord]:
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    reader = csv.DictReader(lines)
    expected = ["pauli", "sign", "value", "stderr", "shots"]
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected:
        raise ValidationError(
            f"measurement CSV header must be {','.join(expected)}, got {reader.fieldnames}"
        )
    records = []
    for i, row in enumerate(reader, start=2):
        where = f"line {i}"
        sign = _parse_sign(row["sign"], where)
        records.append(
            _record_from_fields(
                row["pauli"], sign, row["value"], row["stderr"], row["shots"], n, where
            )
        )
    return records


def write_measurements_csv(records, path: str, comment: str | None = None):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh)
        writer.writerow(["pauli", "sign", "value", "stderr", "shots"])
        for rec in records:
            writer.writerow(
                [
                    rec.word.letters(),
                    "+1" if rec.word.sign > 0 else "-1",
                    f"{rec.value:.10g}",
                    f"{rec.stderr:.10g}",
                    rec.shots if rec.shots is not None else "",
                ]
            )


@dataclass(frozen=True)
class BellValueEstimate:
    value: float
    stderr: float
    residuals: tuple  # per-element (value - 1), subset-index order


def bell_value_from_records(records, graph) -> BellValueEstimate:
    """Combine measured stabilizer expectations into the Bell value.

    ``graph`` may be a Graph or a prepared list of StabilizerElements.
    Records must cover the full group with matching signs; only the
    identity row may be omitted (assumed exactly 1).
    """
    if isinstance(graph, Graph):
        elements = stabilizer_group(graph)
    else:
        elements = list(graph)
    n = elements[0].word.n
    by_masks = {}
    for rec in records:
        by_masks[(rec.word.x_bits, rec.word.z_bits)] = rec

    values = []
    errors = []
    residuals = []
    missing = []
    for element in elements:
        key = (element.word.x_bits, element.word.z_bits)
        rec = by_masks.pop(key, None)
        if rec is None:
            if element.subset == 0:
                values.append(1.0)
                errors.append(0.0)
                residuals.append(0.0)
                continue
            missing.append(format_pauli(element.word))
            continue
        if rec.word.sign != element.word.sign:
            raise ValidationError(
                f"sign mismatch for {rec.word.letters()}: records give "
                f"{format_pauli(rec.word)} but the stabilizer element is "
                f"{format_pauli(element.word)}"
            )
        values.append(rec.value)
        errors.append(rec.stderr)
        residuals.append(rec.value - 1.0)
    if missing:
        shown = ", ".join(missing[:8]) + ("..." if len(missing) > 8 else "")
        raise ValidationError(f"missing {len(missing)} stabilizer observables: {shown}")
    if by_masks:
        extra = ", ".join(r.word.letters() for r in list(by_masks.values())[:8])
        raise ValidationError(f"records are not stabilizer elements of this graph: {extra}")
    scale = 1.0 / (1 << n)
    value = scale * math.fsum(values)
    stderr = scale * math.sqrt(math.fsum(e * e for e in errors))
    return BellValueEstimate(value, stderr, tuple(residuals))


def ghz_summary_metrics(
    summary: GhzSummary,
    graph_bound: LhvBound | None = None,
    mk_lhv_bound: LhvBound | None = None,
) -> tuple[ViolationReport, ViolationReport]:
    """(graph-inequality report, MK-inequality report) from a GHZ summary.

    The fidelity (p0 + p1)/2 + coherence plays against the graph-state
    bound; twice the coherence (optimal phase alignment) plays against
    the MK bound. Errors propagate to first order in quadrature.
    """
    if graph_bound is None:
        graph_bound = ghz_graph_bound(summary.n)
    if mk_lhv_bound is None:
        mk_lhv_bound = mk_bound(summary.n)
    fidelity = (summary.p0 + summary.p1) / 2.0 + summary.coherence
    fid_err = math.sqrt(
        (summary.p0_err / 2.0) ** 2 + (summary.p1_err / 2.0) ** 2 + summary.coh_err**2
    )
    graph_report = ViolationReport.build(fidelity, fid_err, graph_bound)
    mk_report = ViolationReport.build(
        2.0 * summary.coherence, 2.0 * summary.coh_err, mk_lhv_bound
    )
    return graph_report, mk_report


def load_ghz_summaries(path: str) -> list[GhzSummary]:
    """Read GHZ summary rows: n,p0,p1,coherence,phase,p0_err,p1_err,coh_err."""
    expected = ["n", "p0", "p1", "coherence", "phase", "p0_err", "p1_err", "coh_err"]
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if not ln.lstrip().startswith("#")]
    except OSError as exc:
        raise ValidationError(f"cannot read summary file {path!r}: {exc}") from exc
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected:
        raise ValidationError(
            f"summary CSV header must be {','.join(expected)}, got {reader.fieldnames}"
        )
    rows = []
    for i, row in enumerate(reader, start=2):
        try:
            rows.append(
                GhzSummary(
                    n=int(row["n"]),
                    p0=float(row["p0"]),
                    p1=float(row["p1"]),
                    coherence=float(row["coherence"]),
                    phase=float(row["phase"]) if row["phase"] not in (None, "") else None,
                    p0_err=float(row["p0_err"] or 0.0),
                    p1_err=float(row["p1_err"] or 0.0),
                    coh_err=float(row["coh_err"] or 0.0),
                )
            )
        except (ValueError, ValidationError) as exc:
            raise ValidationError(f"line {i}: {exc}") from exc
    if not rows:
        raise ValidationError(f"no summary rows in {path!r}")
    return rows


@dataclass(frozen=True)
class ScalingRow:
    n: int
    graph_relative: float
    mk_relative: float


def noisy_ghz_fidelity(n: int, p: float) -> float:
    """Fidelity of an all-qubit depolarized GHZ state with the ideal one."""
    a = (1.0 + p) / 2.0
    b = (1.0 - p) / 2.0
    return (a**n + b**n + p**n) / 2.0


def scaling_table(n_values, source="ideal") -> list[ScalingRow]:
    """Relative violations per system size.

    ``source`` is "ideal" (fidelity 1, coherence 1/2), a NoiseSpec (closed
    forms for all-qubit depolarizing noise), or a list of GhzSummary rows
    (n_values is ignored for summaries).
    """
    rows = []
    if isinstance(source, str):
        if source != "ideal":
            raise ValidationError(f"unknown scaling source {source!r}")
        for n in n_values:
            _check_scaling_n(n)
            bound = ghz_graph_bound(n)
            rows.append(ScalingRow(n, 1.0 / bound.value, 2.0 ** ((n - 1) / 2)))
    elif isinstance(source, NoiseSpec):
        p = source.p
        for n in n_values:
            _check_scaling_n(n)
            bound = ghz_graph_bound(n)
            graph_rel = noisy_ghz_fidelity(n, p) / bound.value
            mk_rel = (math.sqrt(2.0) * p) ** n / math.sqrt(2.0)
            rows.append(ScalingRow(n, graph_rel, mk_rel))
    else:
        for summary in source:
            _check_scaling_n(summary.n)
            graph_report, mk_report = ghz_summary_metrics(summary)
            rows.append(
                ScalingRow(
                    summary.n,
                    graph_report.relative_violation,
                    mk_report.relative_violation,
                )
            )
    return rows


def _check_scaling_n(n: int):
    if not 2 <= n <= SCALING_MAX_N:
        raise ValidationError(f"scaling rows cover 2 <= n <= {SCALING_MAX_N}, got {n}")


def simulate_measurements(
    spec: PresetSpec, noise: NoiseSpec, shots: int, seed: int
) -> list[MeasurementRecord]:
    """Sample all 2^n stabilizer observables of a (noisy) preset state.

    Per-observable substreams are derived deterministically from the
    master seed by subset index. The identity observable has no projection
    noise and is emitted as exactly (1, 0).
    """
    if shots < 2:
        raise ValidationError(f"need at least 2 shots, got {shots}")
    elements = preset_stabilizer_elements(spec)
    state = preset_state(spec)
    if noise.p == 1.0:
        target = state
    else:
        target = state.density_matrix()  # raises CapacityError beyond the dense cap
        for qubit in range(spec.n):
            target = depolarize_qubit(target, qubit, noise)
    records = []
    for element in elements:
        if element.subset == 0:
            records.append(MeasurementRecord(element.word, 1.0, 0.0, shots))
            continue
        true_value = pauli_expectation(element.word, target)
        true_value = min(1.0, max(-1.0, true_value))
        est = sample_expectation(true_value, shots, subseed(seed, element.subset))
        records.append(MeasurementRecord(element.word, est.value, est.stderr, shots))
    return records
