"""Instance files: schema validation, parsing, canonical serialization.

Instances are JSON objects with a field spec, a window (block bounds), and
one payload section per command family: exact generators, ODE coefficients,
an exact differential polynomial, or a tropical system with candidate
solutions.  Unknown keys are rejected.  Scalars follow the wire format
``{"num": .., "den": ..}`` over Q and bare integers over F_p; boolean series
are sorted exponent-tuple lists plus a precision field.
"""

import json
from itertools import product

import jsonschema

from .errors import MalformedInstance
from .fields import field_from_json
from .matroid import GeneratorFamily
from .series import DiffMonomial, DiffPolynomial, MultiSeries
from .tropical import BooleanSeries, TropDiffPolynomial
from .windows import GroundWindow, SupportSet

_COEFF = {
    "oneOf": [
        {"type": "integer"},
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["num", "den"],
            "properties": {
                "num": {"type": "integer"},
                "den": {"type": "integer"},
            },
        },
    ]
}

_EXP = {"type": "array", "items": {"type": "integer", "minimum": 0}}

_SERIES = {
    "type": "array",
    "items": {
        "type": "object",
        "additionalProperties": False,
        "required": ["exp", "coeff"],
        "properties": {"exp": _EXP, "coeff": _COEFF},
    },
}

_BSERIES = {
    "type": "object",
    "additionalProperties": False,
    "required": ["members"],
    "properties": {
        "members": {"type": "array", "items": _EXP},
        "precision": {"type": "integer", "minimum": -1},
    },
}

_MONOMIAL = {
    "type": "array",
    "items": {
        "type": "object",
        "additionalProperties": False,
        "required": ["var", "J"],
        "properties": {
            "var": {"type": "integer", "minimum": 0},
            "J": _EXP,
            "pow": {"type": "integer", "minimum": 1},
        },
    },
}

INSTANCE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["field", "window"],
    "properties": {
        "field": {
            "oneOf": [
                {"const": "Q"},
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["Fp"],
                    "properties": {"Fp": {"type": "integer", "minimum": 2}},
                },
            ]
        },
        "window": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "minItems": 1,
                "items": {"type": "integer", "minimum": 1},
            },
        },
        "generators": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "minItems": 1, "items": _SERIES},
        },
        "ode": {"type": "array", "minItems": 1, "items": _SERIES},
        "diff_poly": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["coeff", "monomial"],
                "properties": {"coeff": _SERIES, "monomial": _MONOMIAL},
            },
        },
        "trop_system": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["coeff", "monomial"],
                    "properties": {"coeff": _BSERIES, "monomial": _MONOMIAL},
                },
            },
        },
        "trop_solutions": {
            "type": "array",
            "items": {"type": "array", "minItems": 1, "items": _BSERIES},
        },
        "n": {"type": "integer", "minimum": 1},
        "query": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "integer", "minimum": 0}, _EXP],
                "items": False,
                "minItems": 2,
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(INSTANCE_SCHEMA)


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def validate_instance(data):
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        path = "/".join(str(p) for p in e.path) or "<root>"
        raise MalformedInstance(f"instance schema violation at {path}: {e.message}")
    return data


def load_instance(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise MalformedInstance(f"cannot read instance file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInstance(f"instance is not valid JSON: {exc}") from exc
    return validate_instance(data)


def parse_field(data):
    try:
        return field_from_json(data["field"])
    except ValueError as exc:
        raise MalformedInstance(str(exc)) from exc


def parse_window(data):
    return GroundWindow(data["window"])


def _series_from_json(field, bounds, terms, precision=None):
    coeffs = {}
    for term in terms:
        exp = tuple(term["exp"])
        coeffs[exp] = field.coerce(term["coeff"])
    return MultiSeries(field, bounds, coeffs, precision)


def _bseries_from_json(bounds, obj):
    return BooleanSeries(bounds, obj["members"], obj.get("precision"))


def require(data, key, command):
    if key not in data:
        raise MalformedInstance(f"command {command!r} needs the {key!r} section")
    return data[key]


def build_family(data, command="?"):
    field = parse_field(data)
    window = parse_window(data)
    gens = require(data, "generators", command)
    rows = []
    for gen in gens:
        if len(gen) != window.n_blocks:
            raise MalformedInstance(
                f"generator with {len(gen)} blocks on a {window.n_blocks}-block window"
            )
        row = []
        for k, terms in enumerate(gen):
            series = _series_from_json(field, window.blocks[k], terms)
            for exps in product(*(range(b) for b in window.blocks[k])):
                row.append(series.coeff(exps))
        rows.append(row)
    return GeneratorFamily(field, window, rows)


def build_ode(data, command="?"):
    field = parse_field(data)
    window = parse_window(data)
    if window.n_blocks != 1 or window.n_vars != 1:
        raise MalformedInstance("ODE instances use a single one-variable block")
    bounds = window.blocks[0]
    return [
        _series_from_json(field, bounds, terms)
        for terms in require(data, "ode", command)
    ]


def _monomial_from_json(mono):
    return DiffMonomial([(f["var"], f["J"], f.get("pow", 1)) for f in mono])


def build_diff_poly(data, command="?"):
    field = parse_field(data)
    window = parse_window(data)
    if window.n_blocks != 1:
        raise MalformedInstance("differential polynomials use a single block")
    bounds = window.blocks[0]
    n = data.get("n", 1)
    terms = [
        (
            _series_from_json(field, bounds, t["coeff"]),
            _monomial_from_json(t["monomial"]),
        )
        for t in require(data, "diff_poly", command)
    ]
    return DiffPolynomial(field, bounds, n, terms)


def build_trop_system(data, command="?"):
    window = parse_window(data)
    if window.n_blocks != 1:
        raise MalformedInstance("tropical systems use a single block")
    bounds = window.blocks[0]
    n = data.get("n", 1)
    system = []
    for poly in require(data, "trop_system", command):
        terms = [
            (_bseries_from_json(bounds, t["coeff"]), _monomial_from_json(t["monomial"]))
            for t in poly
        ]
        system.append(TropDiffPolynomial(bounds, n, terms))
    return system


def build_trop_solutions(data, command="?"):
    window = parse_window(data)
    bounds = window.blocks[0]
    n = data.get("n", 1)
    solutions = []
    for sol in require(data, "trop_solutions", command):
        if len(sol) != n:
            raise MalformedInstance(f"solution tuple of arity {len(sol)}, n={n}")
        solutions.append(tuple(_bseries_from_json(bounds, s) for s in sol))
    return solutions


def parse_query(data, window, command="?"):
    labels = require(data, "query", command)
    try:
        return SupportSet.from_labels(window, [(b, tuple(e)) for b, e in labels])
    except Exception as exc:
        raise MalformedInstance(f"bad query label: {exc}") from exc


def label_json(window, index):
    block, exps = window.label(index)
    return [block, list(exps)]


def support_json(support):
    return [label_json(support.window, i) for i in support.sorted_members()]


def series_text(series):
    """Deterministic one-line rendering of an exact series."""
    parts = [
        f"{exps}:{value}" for exps, value in sorted(series.coeffs.items())
    ]
    return "{" + ", ".join(parts) + f"; precision {series.precision}" + "}"


def bseries_json(b):
    return {"members": [list(e) for e in b.sorted_members()], "precision": b.precision}
