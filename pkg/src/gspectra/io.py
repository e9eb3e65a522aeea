"""File formats: signal text files and JSON documents for Fourier and
bispectral coefficients.

Signal files are plain text, one decimal value per line in canonical
element order, preceded by a required header line ``# group=<kind>``.
Complex matrices serialize as nested lists of [re, im] pairs.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InvalidParameterError
from .fourier import FourierCoefficients
from .groups import FiniteGroup, GroupSignal, group_from_kind
from .spectra import BispectrumCoefficients


def write_signal(path, signal: GroupSignal):
    lines = [f"# group={signal.group.kind}"]
    lines.extend(repr(float(v)) for v in signal.values)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_signal(path, expected_group: FiniteGroup = None) -> GroupSignal:
    with open(path) as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if not lines or not lines[0].startswith("# group="):
        raise InvalidParameterError(f"{path}: missing '# group=<kind>' header")
    kind = lines[0][len("# group="):]
    group = group_from_kind(kind)
    if expected_group is not None and group != expected_group:
        raise InvalidParameterError(
            f"{path}: header group {kind} does not match expected {expected_group.kind}"
        )
    values = [float(v) for v in lines[1:]]
    if len(values) != group.order:
        raise InvalidParameterError(
            f"{path}: expected {group.order} values, found {len(values)}"
        )
    return GroupSignal(group, np.array(values))


def _matrix_to_json(mat: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.atleast_2d(mat)]


def _matrix_from_json(data) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data])


def fourier_to_json(coeffs: FourierCoefficients) -> dict:
    return {
        "group": coeffs.group.kind,
        "coeffs": {label: _matrix_to_json(mat) for label, mat in coeffs.coeffs.items()},
    }


def fourier_from_json(doc: dict) -> FourierCoefficients:
    group = group_from_kind(doc["group"])
    return FourierCoefficients(
        group, {label: _matrix_from_json(m) for label, m in doc["coeffs"].items()}
    )


def bispectrum_to_json(bisp: BispectrumCoefficients) -> dict:
    return {
        "group": bisp.group.kind,
        "mode": bisp.mode,
        "pairs": [
            {
                "rho1": pair[0],
                "rho2": pair[1],
                "matrix": _matrix_to_json(bisp.entries[pair]),
            }
            for pair in bisp.pairs
        ],
        "scalar_count": bisp.scalar_count,
    }


def bispectrum_from_json(doc: dict) -> BispectrumCoefficients:
    group = group_from_kind(doc["group"])
    pairs = []
    entries = {}
    for item in doc["pairs"]:
        pair = (item["rho1"], item["rho2"])
        pairs.append(pair)
        entries[pair] = _matrix_from_json(item["matrix"])
    return BispectrumCoefficients(
        group, doc["mode"], tuple(pairs), entries, int(doc["scalar_count"])
    )


def cg_to_json(decomp) -> dict:
    return {
        "pair": list(decomp.pair),
        "matrix": _matrix_to_json(decomp.matrix),
        "blocks": list(decomp.blocks),
        "block_dims": list(decomp.block_dims),
    }


def cg_from_json(doc: dict):
    from .clebsch import CGDecomposition

    return CGDecomposition(
        tuple(doc["pair"]),
        _matrix_from_json(doc["matrix"]),
        tuple(doc["blocks"]),
        tuple(doc["block_dims"]),
    )


def save_json(path, doc: dict):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
