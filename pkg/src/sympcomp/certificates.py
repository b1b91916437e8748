"""JSON certificates and their independent verification.

A certificate is self-contained: the ring descriptor, the claimed objects and
the run parameters are all in the file.  Verification re-parses everything
and recomputes each defining identity; a SHA-256 digest over the canonical
payload additionally pins the metadata (ring key, seed, trace) that the
algebraic identities alone might not constrain.
"""

import hashlib
import json
import os
import tempfile

import numpy as np

from . import __version__
from .errors import SympCompError
from .matrix import RingMatrix, det
from .parse import parse_element, parse_ring
from .unimodular import orbit_bfs
from .witt import WittCertificate, verify_certificate as verify_witt_identity
from .words import is_symplectic, relative_congruent

KINDS = ("sp4-completion", "witt", "orbit-report")


def canonical(payload):
    body = {k: v for k, v in payload.items() if k != "digest"}
    return json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(payload):
    return hashlib.sha256(canonical(payload).encode("utf-8")).hexdigest()


def seal(payload):
    payload = dict(payload)
    payload["version"] = __version__
    payload["digest"] = digest(payload)
    return payload


def completion_certificate(ring, row, theta, mode, seed, budget, trace=None, ideal=None):
    data = {
        "kind": "sp4-completion",
        "ring": ring.key,
        "row": [str(x) for x in row],
        "theta": theta.to_strings(),
        "mode": mode,
        "seed": seed,
        "budget": budget,
    }
    if trace is not None:
        data["trace"] = trace
    if ideal:
        data["ideal"] = [str(g) for g in ideal]
    return seal(data)


def witt_certificate(cert, seed, budget):
    data = cert.to_json()
    data.update(seed=seed, budget=budget)
    return seal(data)


def _partition_digest(table):
    return hashlib.sha256(np.asarray(table.reps, dtype=np.int64).tobytes()).hexdigest()


def orbit_report(ring, length, generators=("E", "ESp")):
    tables = {g: orbit_bfs(ring, length, g) for g in generators}
    data = {
        "kind": "orbit-report",
        "ring": ring.key,
        "length": length,
        "partitions": {
            g: {"rows": t.num_rows, "orbits": t.num_orbits, "cells": _partition_digest(t)}
            for g, t in tables.items()
        },
        "seed": 0,
        "budget": 0,
    }
    vals = list(tables.values())
    data["equal"] = all(vals[0].same_partition(t) for t in vals[1:])
    return seal(data), tables


# ---------------------------------------------------------------- verification


def _matrix(rows, R):
    return RingMatrix(R, [[parse_element(x, R) for x in r] for r in rows])


def _check_completion(data, R, fails):
    row = [parse_element(x, R) for x in data["row"]]
    theta = _matrix(data["theta"], R)
    n = len(row)
    if theta.shape != (n, n) or n % 2:
        fails.append("theta has the wrong shape")
        return
    if not is_symplectic(theta):
        fails.append("Θ^Tψ Θ = ψ fails")
    if theta.row(0) != row:
        fails.append("e_1Θ = v fails")
    if not det(theta).is_one():
        fails.append("det Θ = 1 fails")
    if "ideal" in data:
        gens = [parse_element(g, R) for g in data["ideal"]]
        if not relative_congruent(theta, gens):
            fails.append("Θ ≡ I mod the ideal fails")


def _check_witt(data, R, fails):
    cert = WittCertificate.from_json(data, R)
    if not verify_witt_identity(cert.left, cert.right, cert):
        fails.append("A ⊥ ψ = ε^T (B ⊥ ψ) ε fails")


def _check_orbits(data, R, fails):
    length = int(data["length"])
    tables = {}
    for g, claim in data["partitions"].items():
        t = orbit_bfs(R, length, g)
        tables[g] = t
        got = {"rows": t.num_rows, "orbits": t.num_orbits, "cells": _partition_digest(t)}
        for k, v in got.items():
            if claim.get(k) != v:
                fails.append(f"{g} partition: {k} is {v}, certificate says {claim.get(k)}")
    vals = list(tables.values())
    eq = all(vals[0].same_partition(t) for t in vals[1:])
    if data.get("equal") != eq:
        fails.append(f"partition equality is {eq}, certificate says {data.get('equal')}")


def verify_payload(data):
    """List of failed identities (empty when the certificate verifies)."""
    fails = []
    try:
        kind = data["kind"]
        if kind not in KINDS:
            return [f"unknown certificate kind {kind!r}"]
        R = parse_ring(data["ring"])
        {"sp4-completion": _check_completion, "witt": _check_witt,
         "orbit-report": _check_orbits}[kind](data, R, fails)
    except (SympCompError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        fails.append(f"malformed certificate: {type(exc).__name__}: {exc}")
    if data.get("digest") != digest(data):
        fails.append("digest mismatch")
    return fails


def verify_file(path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return verify_payload(data)


def write_atomic(path, data):
    """Write JSON to ``path`` via a temporary file in the same directory."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


__all__ = [
    "KINDS", "canonical", "digest", "seal", "completion_certificate", "witt_certificate",
    "orbit_report", "verify_payload", "verify_file", "write_atomic",
]
