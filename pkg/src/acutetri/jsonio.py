"""Deterministic JSON text: sorted keys, floats at 17 significant digits."""

from __future__ import annotations

import json
import math


def _norm(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite float {obj!r} in JSON output")
        return _Float(obj)
    if isinstance(obj, dict):
        return {str(k): _norm(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_norm(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _norm(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


class _Float(float):
    def __repr__(self) -> str:
        text = format(float(self), ".17g")
        if "e" not in text and "." not in text and "n" not in text:
            text += ".0"
        return text


class _Encoder(json.JSONEncoder):
    def iterencode(self, o, _one_shot=False):
        # the C encoder ignores float subclasses' repr; force the Python path
        return json.encoder._make_iterencode(
            {}, self.default, json.encoder.encode_basestring_ascii, self.indent,
            repr, self.key_separator, self.item_separator, self.sort_keys,
            self.skipkeys, _one_shot,
        )(o, 0)


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(_norm(obj), cls=_Encoder, sort_keys=True, indent=indent)


def loads(text: str):
    return json.loads(text)
