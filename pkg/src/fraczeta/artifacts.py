"""Deterministic artifact encoders shared by the CLI and the check suite.

Numbers are written with repr() (shortest round-trip decimal), newlines are
always "\n", and JSON keys are sorted, so identical inputs give identical
bytes on every platform.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .partition import OscillationProfile, PartitionSample, TailCertificate
from .spectrum import SpectrumBatch
from .zeta import PoleEstimate, ZetaPoint


def fnum(x) -> str:
    return repr(float(x))


def csv_bytes(header: str, rows) -> bytes:
    lines = [header]
    lines.extend(",".join(row) for row in rows)
    return ("\n".join(lines) + "\n").encode("utf-8")


def json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")


def spectrum_csv(batch: SpectrumBatch) -> bytes:
    rows = (
        (str(i + 1), fnum(v), str(int(m)))
        for i, (v, m) in enumerate(zip(batch.values, batch.mults))
    )
    return csv_bytes("index,value,multiplicity", rows)


def spectrum_certificates_json(batch: SpectrumBatch) -> bytes:
    entries = [
        {"index": i + 1, "iterations": int(it), "last_delta": float(delta)}
        for i, (it, delta) in enumerate(batch.certificates)
    ]
    return json_bytes({"convergence_certificates": entries})


def partition_csv(samples: list[PartitionSample]) -> bytes:
    rows = ((fnum(s.t), fnum(s.value), fnum(s.truncation_error)) for s in samples)
    return csv_bytes("t,Z,truncation_error", rows)


def zeta_csv(points: list[ZetaPoint]) -> bytes:
    rows = (
        (
            fnum(p.s.real),
            fnum(p.s.imag),
            fnum(p.gamma),
            fnum(p.value.real),
            fnum(p.value.imag),
            fnum(p.error_bound),
            p.method,
        )
        for p in points
    )
    return csv_bytes("Re_s,Im_s,gamma,Re_zeta,Im_zeta,error_bound,method", rows)


def _pole_obj(p: PoleEstimate) -> dict:
    obj = {
        "position": {"re": p.position.real, "im": p.position.imag},
        "m": p.m,
        "n": p.n,
        "k_index": p.k_index,
        "source": p.source,
        "residue": None
        if p.residue is None
        else {"re": p.residue.real, "im": p.residue.imag},
    }
    if p.match_distance is not None:
        obj["match_distance"] = p.match_distance
    if p.order is not None:
        obj["order"] = p.order
    if p.note is not None:
        obj["note"] = p.note
    return obj


def poles_json(
    predicted: list[PoleEstimate],
    located: list[PoleEstimate],
    region,
    gamma: float,
    mode: str,
    note: str | None = None,
) -> bytes:
    doc = {
        "region": {
            "re_lo": float(region[0]),
            "re_hi": float(region[1]),
            "im_lo": float(region[2]),
            "im_hi": float(region[3]),
        },
        "gamma": float(gamma),
        "mode": mode,
        "predicted": [_pole_obj(p) for p in predicted],
        "located": [_pole_obj(p) for p in located],
    }
    if note is not None:
        doc["note"] = note
    return json_bytes(doc)


def weyl_json(
    model_name: str,
    ts: np.ndarray,
    ws: np.ndarray,
    truncs: np.ndarray,
    profiles: list[OscillationProfile],
) -> bytes:
    doc = {
        "model": model_name,
        "samples": [
            {"t": float(t), "W": float(w), "truncation_error": float(e)}
            for t, w, e in zip(ts, ws, truncs)
        ],
        "profiles": [
            {
                "k_index": p.k_index,
                "exponent": p.exponent,
                "period": p.period,
                "fit_window": list(p.fit_window),
                "fit_residual": p.fit_residual,
                "warning": p.warning,
                "coefficients": [
                    {"n": n, "re": g.real, "im": g.imag}
                    for n, g in sorted(p.coefficients.items())
                ],
            }
            for p in profiles
        ],
    }
    return json_bytes(doc)


def tail_certificate_obj(name: str, cert: TailCertificate) -> dict:
    return {
        "model": name,
        "c3": cert.c3,
        "c4": cert.c4,
        "c5": cert.c5,
        "c6": cert.c6,
        "fit_window": list(cert.fit_window),
        "verified": cert.verified,
    }


def write_artifact(out_dir, name: str, data: bytes) -> Path:
    """Atomic write: the file appears complete or not at all."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    target = out / name
    fd, tmp = tempfile.mkstemp(dir=out, prefix=f".{name}.")
    try:
        with os.fdopen(fd, "wb") as fp:
            fp.write(data)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return target
