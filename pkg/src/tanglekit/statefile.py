"""JSON state files and canonical report text.

Canonical field order per kind (``kind`` always first):

* ``w_class``:        kind, a_re, a_im, b_re, b_im
* ``mixed_w``:        kind, p, a_re, a_im, b_re, b_im
* ``partitioned_w``:  kind, a_re, a_im, blocks[{name, re, im}]
* ``ghz``:            kind, n_qubits
* ``dense_pure``:     kind, n_qubits, re, im
* ``dense_mixed``:    kind, n_qubits, re, im   (row-major nested lists)

Complex numbers are always split into real and imaginary arrays.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .qstate import DensityMatrix, Partition, PureState
from . import states as st

KINDS = ("w_class", "mixed_w", "partitioned_w", "ghz", "dense_pure", "dense_mixed")


class StateFileError(ValueError):
    """A state file that does not parse or does not describe a valid state."""


@dataclass(frozen=True)
class LoadedState:
    kind: str
    state: PureState | DensityMatrix
    spec: Any = None
    partition: Partition | None = None

    @property
    def is_pure(self) -> bool:
        return isinstance(self.state, PureState)


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} cannot be written")
    text = "%.17g" % x
    if all(c not in text for c in ".en"):
        text += ".0"
    return text


def dumps_canonical(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with insertion-ordered keys and floats at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps_canonical(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.floating, np.integer)) and not isinstance(v, bool)
               for v in obj):
            return "[" + ", ".join(dumps_canonical(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps_canonical(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def _split(values) -> tuple[list, list]:
    arr = np.asarray(values, dtype=np.complex128)
    return arr.real.tolist(), arr.imag.tolist()


def _w_fields(spec: st.WClassSpec) -> dict:
    b_re, b_im = _split(spec.b)
    return {"a_re": spec.a.real, "a_im": spec.a.imag, "b_re": b_re, "b_im": b_im}


def to_document(kind: str, obj) -> dict:
    """Canonical document for a spec (w_class, mixed_w, partitioned_w), qubit count (ghz) or state."""
    if kind == "w_class":
        return {"kind": kind, **_w_fields(obj)}
    if kind == "mixed_w":
        return {"kind": kind, "p": obj.p, **_w_fields(obj.w)}
    if kind == "partitioned_w":
        blocks = []
        for name, v in obj.blocks:
            re, im = _split(v)
            blocks.append({"name": name, "re": re, "im": im})
        return {"kind": kind, "a_re": obj.a_tilde.real, "a_im": obj.a_tilde.imag, "blocks": blocks}
    if kind == "ghz":
        return {"kind": kind, "n_qubits": int(obj)}
    if kind == "dense_pure":
        re, im = _split(obj.amplitudes)
        return {"kind": kind, "n_qubits": obj.n_qubits, "re": re, "im": im}
    if kind == "dense_mixed":
        re, im = _split(obj.matrix)
        return {"kind": kind, "n_qubits": obj.n_qubits, "re": re, "im": im}
    raise StateFileError(f"unknown state kind {kind!r}")


def dumps_state(kind: str, obj) -> str:
    return dumps_canonical(to_document(kind, obj)) + "\n"


def _field(doc: dict, key: str, path: str):
    if key not in doc:
        raise StateFileError(f"{path}{key}: missing field")
    return doc[key]


def _number(doc: dict, key: str, path: str) -> float:
    v = _field(doc, key, path)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise StateFileError(f"{path}{key}: expected a number, got {type(v).__name__}")
    return float(v)


def _numbers(doc: dict, key: str, path: str, ndim: int = 1) -> np.ndarray:
    v = _field(doc, key, path)
    try:
        arr = np.asarray(v, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"{path}{key}: expected numeric array") from exc
    if arr.ndim != ndim or (ndim == 2 and arr.shape[0] != arr.shape[1]):
        raise StateFileError(f"{path}{key}: expected a {'square ' if ndim == 2 else ''}"
                             f"{ndim}-d array, got shape {arr.shape}")
    return arr


def _complex(doc, re_key, im_key, path, ndim=1) -> np.ndarray:
    re = _numbers(doc, re_key, path, ndim)
    im = _numbers(doc, im_key, path, ndim)
    if re.shape != im.shape:
        raise StateFileError(f"{path}{im_key}: shape {im.shape} differs from {re_key} {re.shape}")
    return re + 1j * im


def _w_spec(doc: dict) -> st.WClassSpec:
    a = complex(_number(doc, "a_re", ""), _number(doc, "a_im", ""))
    b = _complex(doc, "b_re", "b_im", "")
    return st.WClassSpec(a, b)


def from_document(doc: dict) -> LoadedState:
    if not isinstance(doc, dict):
        raise StateFileError("top level: expected an object")
    kind = _field(doc, "kind", "")
    if kind not in KINDS:
        raise StateFileError(f"kind: unknown state kind {kind!r}, expected one of {KINDS}")
    try:
        if kind == "w_class":
            spec = _w_spec(doc)
            return LoadedState(kind, st.w_class(spec), spec)
        if kind == "mixed_w":
            spec = st.MixedFamilySpec(_w_spec(doc), _number(doc, "p", ""))
            return LoadedState(kind, st.mixed_family(spec), spec)
        if kind == "partitioned_w":
            a = complex(_number(doc, "a_re", ""), _number(doc, "a_im", ""))
            raw = _field(doc, "blocks", "")
            if not isinstance(raw, list):
                raise StateFileError("blocks: expected a list")
            blocks = []
            for i, blk in enumerate(raw):
                path = f"blocks[{i}]."
                if not isinstance(blk, dict):
                    raise StateFileError(f"blocks[{i}]: expected an object")
                name = _field(blk, "name", path)
                blocks.append((str(name), _complex(blk, "re", "im", path)))
            spec = st.PartitionedWSpec(a, blocks)
            state, partition = st.w_partitioned(spec)
            return LoadedState(kind, state, spec, partition)
        if kind == "ghz":
            n = _field(doc, "n_qubits", "")
            if isinstance(n, bool) or not isinstance(n, int) or n < 2:
                raise StateFileError("n_qubits: expected an integer >= 2")
            return LoadedState(kind, st.ghz(n), n)
        n = _field(doc, "n_qubits", "")
        if kind == "dense_pure":
            state = PureState(_complex(doc, "re", "im", ""))
        else:
            state = DensityMatrix(_complex(doc, "re", "im", "", ndim=2))
        if state.n_qubits != n:
            raise StateFileError(f"n_qubits: declared {n}, data has {state.n_qubits}")
        return LoadedState(kind, state, None)
    except StateFileError:
        raise
    except ValueError as exc:
        raise StateFileError(f"{kind}: {exc}") from exc


def loads_state(text: str) -> LoadedState:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    return from_document(doc)


def load_state(path) -> LoadedState:
    with open(path, encoding="utf-8") as fh:
        return loads_state(fh.read())


def reserialize(loaded: LoadedState) -> str:
    obj = loaded.spec if loaded.kind in ("w_class", "mixed_w", "partitioned_w", "ghz") else loaded.state
    return dumps_state(loaded.kind, obj)
