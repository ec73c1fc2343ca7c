"""Request streams: trace replay and synthetic Zipf workloads."""

import logging
from typing import Iterator, Optional

import numpy as np

from ..errors import InvalidArgumentError, TraceFormatError
from ..models.run_config import WorkloadSpec

logger = logging.getLogger(__name__)


def zipf_probabilities(universe: int, alpha: float) -> np.ndarray:
    """Probability of each rank 1..universe, proportional to rank^-alpha."""
    weights = np.arange(1, universe + 1, dtype=np.float64) ** -alpha
    return weights / weights.sum()


def zipf_generate(alpha: float, universe: int, length: int, seed: int) -> Iterator[bytes]:
    """I.i.d. Zipf-ranked keys; rank r is emitted as the key ``b"r"``."""
    if alpha <= 0:
        raise InvalidArgumentError(f"alpha must be positive, got {alpha}")
    if universe < 1 or length < 1:
        raise InvalidArgumentError("universe and length must be positive")
    rng = np.random.default_rng(seed)
    ranks = rng.choice(universe, size=length, p=zipf_probabilities(universe, alpha)) + 1
    for rank in ranks.tolist():
        yield b"%d" % rank


def read_trace(path: str, limit: Optional[int] = None) -> Iterator[bytes]:
    """Keys of a UTF-8 trace, one per line; lines starting with '#' are skipped."""
    try:
        handle = open(path, "rb")
    except OSError as e:
        raise TraceFormatError(path, 0, f"cannot open trace: {e.strerror or e}") from e

    emitted = 0
    with handle:
        for line_no, raw in enumerate(handle, start=1):
            if limit is not None and emitted >= limit:
                return
            line = raw.rstrip(b"\r\n")
            try:
                text = line.decode("utf-8")
            except UnicodeDecodeError as e:
                raise TraceFormatError(path, line_no, f"invalid UTF-8: {e.reason}") from e
            if text.startswith("#"):
                continue
            if not text:
                raise TraceFormatError(path, line_no, "empty key")
            emitted += 1
            yield line

    if emitted == 0:
        raise TraceFormatError(path, 0, "trace holds no keys")


def request_stream(spec: WorkloadSpec, seed: int) -> Iterator[bytes]:
    """The request stream a WorkloadSpec describes."""
    if spec.trace_path is not None:
        logger.info(f"Replaying trace {spec.trace_path}")
        return read_trace(spec.trace_path, spec.length)
    logger.info(
        f"Synthetic Zipf workload: alpha={spec.zipf_alpha}, "
        f"universe={spec.universe}, length={spec.length}"
    )
    return zipf_generate(spec.zipf_alpha, spec.universe, spec.length, seed)
