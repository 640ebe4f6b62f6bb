"""Text and JSON encodings of group elements, chains and results.

Elements are written ``A2 w=[1,2] t=[-4,-4]`` (type optional) or as JSON objects
``{"type": "A2", "w": [1, 2], "t": [-4, -4], "convention": "untwisted"}``. ``w`` is a word
in the classical simple reflections and ``t`` the translation in simple-coroot coordinates.

Laid out like a REST plugin's ``api/serializers.py``: every wire format lives in this module.
"""

import json
import re

from qbg_mobius.affine import AffineElement
from qbg_mobius.cartan import CorootVector
from qbg_mobius.exceptions import InvalidInputError
from qbg_mobius.weyl import from_word

ELEMENT_PATTERN = re.compile(
    r"^\s*(?:(?P<type>[A-Za-z][\w:]*)\s+)?w\s*=\s*(?P<w>\[[^\]]*\])\s+t\s*=\s*(?P<t>\[[^\]]*\])\s*$"
)


def parse_int_list(text, field_name):
    try:
        values = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError({field_name: f"Expected a bracketed integer list, got {text!r}"}) from exc
    if not isinstance(values, list) or not all(isinstance(value, int) for value in values):
        raise InvalidInputError({field_name: f"Expected a bracketed integer list, got {text!r}"})
    return values


def parse_element_text(text):
    """Split the compact syntax into ``{"type", "w", "t"}``; ``type`` may be ``None``."""
    match = ELEMENT_PATTERN.match(text or "")
    if not match:
        raise InvalidInputError({"element": f'Cannot parse {text!r}; expected e.g. "A2 w=[1,2] t=[-4,-4]"'})
    return {
        "type": match.group("type"),
        "w": parse_int_list(match.group("w"), "w"),
        "t": parse_int_list(match.group("t"), "t"),
    }


def element_from_dict(group, data):
    if isinstance(data, str):
        data = parse_element_text(data)
    if not isinstance(data, dict) or "w" not in data or "t" not in data:
        raise InvalidInputError({"element": f"Expected an element encoding, got {data!r}"})

    label = data.get("type")
    if label and label != group.type_label:
        raise InvalidInputError({"type": f"Element of type {label} used with {group.type_label}"})
    convention = data.get("convention")
    if convention and convention != group.convention:
        raise InvalidInputError({"convention": f"Element in the {convention} convention used with {group.convention}"})

    translation = data["t"]
    if len(translation) != group.rank:
        raise InvalidInputError({"t": f"Translation {translation} does not have rank {group.rank}"})
    return AffineElement(from_word(group.system, data["w"]), CorootVector(translation))


def parse_element(group, text):
    return element_from_dict(group, parse_element_text(text))


def element_to_dict(group, x):
    return {
        "type": group.type_label,
        "w": x.w.reduced_word(),
        "t": x.lam.to_list(),
        "convention": str(group.convention),
    }


def format_element(group, x):
    return f"{group.type_label} w={x.w} t={x.lam}"


def load_chain(group, data):
    """A chain from a decoded JSON list of element encodings, bottom first."""
    if not isinstance(data, list) or not data:
        raise InvalidInputError({"chain": "Expected a non-empty JSON list of elements"})
    return [element_from_dict(group, item) for item in data]


def weyl_to_dict(w):
    return {"word": w.reduced_word(), "length": w.length}
