rational = {"type": "string", "format": "rational"}

ball = {
    "type": "object",
    "properties": {"center": rational, "radius": rational},
    "required": ["center", "radius"],
    "additionalProperties": False,
}

coefficient = {"anyOf": [rational, {"type": "number"}, ball]}

trigpoly = {
    "type": "object",
    "properties": {
        "a0": coefficient,
        "cos": {"type": "object", "additionalProperties": coefficient},
        "sin": {"type": "object", "additionalProperties": coefficient},
    },
    "additionalProperties": False,
}

sequence_header = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["left", "right", "variation"]},
        "V": rational,
    },
    "required": ["kind"],
}

sigma1_spec = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["sigma1"]},
        "alphas": {"type": "array", "items": rational, "minItems": 1},
        "preset": {"type": "string"},
        "m0": {"type": "number", "minimum": 2},
        "d_sup": rational,
    },
}

weak_spec = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["weak"]},
        "deltas": {"type": "array", "items": rational, "minItems": 1},
        "preset": {"type": "string"},
        "V": rational,
        "schedule": {"enum": ["double-exponential", "doubling"]},
    },
}
