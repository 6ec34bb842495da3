"""
Flow Traces
Sampled trajectories with their terminal classification, and the delimited
trace file format:

    t,l_0..l_{m-1},K_0..K_{m-1},H,E,vol,in_L
    <one row per recorded sample>
    # classification=<Converged|Diverging|Undetermined|Singular|Failed> rate=<λ or NA> [singular_time=<t>]

H is the energy H̃, E the energy the selected flow descends and in_L is 1
when the sample lies in the decorated region, 0 otherwise.
"""

import csv
import io
import logging
from enum import Enum
from typing import List, Optional, TextIO

import numpy as np
from pydantic import BaseModel, ConfigDict

logger = logging.getLogger(__name__)

TAIL_COLUMNS = ["H", "E", "vol", "in_L"]


class Classification(str, Enum):
    """
    Terminal verdict of a flow run

    The divergence verdict is numerical: a large metric together with
    curvature that stayed away from zero over the trailing window.
    Singular ends a classic run at the boundary of the decorated region.
    """
    CONVERGED = "Converged"
    DIVERGING = "Diverging"
    UNDETERMINED = "Undetermined"
    SINGULAR = "Singular"
    FAILED = "Failed"


class FlowSample(BaseModel):
    """One recorded state (t, l, K̃, H̃, descended energy, vol, in_L)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t: float
    l: np.ndarray
    K: np.ndarray
    H: float
    energy: float
    volume: float
    residual_norm: float
    in_L: bool
class IntegratorFailure(RuntimeError):
    """Non-finite state or a Calabi step off the decorated region"""

    def __init__(self, message: str, last_sample: Optional[FlowSample] = None):
        self.last_sample = last_sample
        self.trace: Optional["FlowTrace"] = None
        super().__init__(message)


class FlowTrace(BaseModel):
    """
    Trajectory of one run

    samples hold the full state every record_every accepted steps (plus the
    first and last); residual_times/residual_norms hold the sup-norm of the
    residual K̃ − K̄ at every accepted step, which rate fitting uses.
    energy is the functional the selected flow descends: H̃ for ricci, the
    prescribed energy for prescribed and classic, ‖K̃‖²/2 for calabi.
    singular_time is set on Singular runs: the first time at which the
    state left the decorated region.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: str
    samples: List[FlowSample]
    classification: Classification
    limit: Optional[np.ndarray] = None
    rate: Optional[float] = None
    rate_residual: Optional[float] = None
    residual_times: Optional[np.ndarray] = None
    residual_norms: Optional[np.ndarray] = None
    failure: Optional[str] = None
    singular_time: Optional[float] = None

    @property
    def final(self) -> FlowSample:
        return self.samples[-1]


def _fmt(value: float) -> str:
    return repr(float(value))


def write_trace(trace: FlowTrace, stream: TextIO, delimiter: str = ",") -> None:
    """
    Write a trace in the delimited format

    Args:
        trace: Trace to write
        stream: Text stream
        delimiter: Field delimiter
    """
    m = trace.samples[0].l.size if trace.samples else 0
    writer = csv.writer(stream, delimiter=delimiter, lineterminator="\n")
    writer.writerow(
        ["t"] + [f"l_{i}" for i in range(m)] + [f"K_{i}" for i in range(m)] + TAIL_COLUMNS
    )
    for sample in trace.samples:
        writer.writerow(
            [_fmt(sample.t)]
            + [_fmt(v) for v in sample.l]
            + [_fmt(v) for v in sample.K]
            + [_fmt(sample.H), _fmt(sample.energy), _fmt(sample.volume), int(sample.in_L)]
        )
    rate = _fmt(trace.rate) if trace.rate is not None else "NA"
    footer = f"# classification={trace.classification.value} rate={rate}"
    if trace.singular_time is not None:
        footer += f" singular_time={_fmt(trace.singular_time)}"
    stream.write(footer + "\n")


def trace_to_text(trace: FlowTrace, delimiter: str = ",") -> str:
    buffer = io.StringIO()
    write_trace(trace, buffer, delimiter)
    return buffer.getvalue()


def read_trace(stream: TextIO, delimiter: str = ",") -> FlowTrace:
    """
    Read a trace written by write_trace

    Residual norms are recomputed from the recorded curvatures (the target
    of a prescribed run is not stored, so they are sup-norms of K̃).
    """
    lines = stream.read().splitlines()
    footer = [line for line in lines if line.startswith("#")]
    rows = list(csv.reader([line for line in lines if line and not line.startswith("#")],
                           delimiter=delimiter))
    header, body = rows[0], rows[1:]
    m = (len(header) - 1 - len(TAIL_COLUMNS)) // 2

    samples = []
    for row in body:
        values = np.array([float(v) for v in row])
        K = values[1 + m:1 + 2 * m]
        H, energy, volume, in_L = values[1 + 2 * m:]
        samples.append(FlowSample(
            t=values[0],
            l=values[1:1 + m],
            K=K,
            H=H,
            energy=energy,
            volume=volume,
            residual_norm=float(np.max(np.abs(K))) if m else 0.0,
            in_L=bool(in_L)
        ))

    classification = Classification.UNDETERMINED
    rate = None
    singular_time = None
    if footer:
        fields = dict(item.split("=", 1) for item in footer[-1].lstrip("# ").split())
        classification = Classification(fields.get("classification", "Undetermined"))
        if fields.get("rate", "NA") != "NA":
            rate = float(fields["rate"])
        if "singular_time" in fields:
            singular_time = float(fields["singular_time"])

    return FlowTrace(
        kind="unknown",
        samples=samples,
        classification=classification,
        limit=samples[-1].l if classification == Classification.CONVERGED and samples else None,
        rate=rate,
        singular_time=singular_time
    )
