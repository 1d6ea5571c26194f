"""Model files: TOML in, TOML out.

Layout:

    [group]
    kinds = ["Z", "Z"]          # most significant first
    names = ["omega", "unit"]   # optional coordinate names
    precision = "[6;0]"         # optional working precision

    [derivation]
    u = "1"

    [derivation.character]
    omega = "t^[-1;0]"          # omitted coordinates get the zero series

    [generators.th1]
    d = "t^[0;-3]"
    exponent = "[0;1]"          # optional adjunction metadata

Mutating CLI operations write the grown model next to the input rather than
editing it in place, so witness ledgers stay reproducible.
"""

from __future__ import annotations

import sys
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .deriv import DerivationSpec
from .dvmodel import DVModel, GenRecord
from .errors import ParseError
from .hahn import one, zero
from .ordgroup import INTEGERS, RATIONALS, ValueGroupDesc
from .parsing import format_group_elem, format_series, parse_group_elem, parse_series

_KIND_ALIASES = {"Z": INTEGERS, "Q": RATIONALS, "int": INTEGERS, "rat": RATIONALS}


def load_model(path) -> tuple[DVModel, list[str]]:
    """Read a model file; returns (model, coordinate names)."""
    raw = Path(path).read_bytes()
    try:
        doc = tomllib.loads(raw.decode())
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"model file: {exc}") from None
    return model_from_dict(doc)


def model_from_dict(doc: dict) -> tuple[DVModel, list[str]]:
    gsec = doc.get("group", {})
    kinds = gsec.get("kinds")
    if not kinds:
        raise ParseError("model file: [group].kinds missing")
    try:
        group = ValueGroupDesc(tuple(_KIND_ALIASES[k] for k in kinds))
    except KeyError as exc:
        raise ParseError(f"model file: unknown coordinate kind {exc}") from None
    names = list(gsec.get("names", [f"g{i}" for i in range(group.rank)]))
    if len(names) != group.rank:
        raise ParseError("model file: names do not match the rank")
    precision = None
    if "precision" in gsec:
        precision = parse_group_elem(gsec["precision"], group)

    dsec = doc.get("derivation", {})
    u = parse_series(dsec["u"], group) if "u" in dsec else one(group)
    char_map = dsec.get("character", {})
    character = []
    for i, name in enumerate(names):
        if name in char_map:
            character.append(parse_series(char_map[name], group))
        else:
            character.append(zero(group))
    unknown = set(char_map) - set(names)
    if unknown:
        raise ParseError(f"model file: character keys {sorted(unknown)} are not coordinates")

    table = {}
    generators = []

    def add_generator(name, d, exponent=None):
        if not name.startswith("th"):
            raise ParseError(f"model file: generator {name!r} must be named thN")
        index = int(name[2:])
        if index in table:
            raise ParseError(f"model file: duplicate generator {name!r}")
        table[index] = d
        generators.append(GenRecord(index, name, exponent, d))

    # short form: [derivation.coeff] th1 = "t^-3"
    for name, text in dsec.get("coeff", {}).items():
        add_generator(name, parse_series(text, group))
    for name, entry in doc.get("generators", {}).items():
        d = parse_series(entry.get("d", "0"), group)
        exponent = (
            parse_group_elem(entry["exponent"], group) if "exponent" in entry else None
        )
        add_generator(name, d, exponent)

    spec = DerivationSpec(group, tuple(character), table, u)
    model = DVModel(group, spec, generators=generators, precision=precision)
    return model, names


def emit_model(model: DVModel, names: list[str]) -> str:
    group = model.group
    lines = ["[group]"]
    lines.append("kinds = [" + ", ".join(f'"{k}"' for k in group.kinds) + "]")
    lines.append("names = [" + ", ".join(f'"{n}"' for n in names) + "]")
    lines.append(f'precision = "{format_group_elem(model.precision)}"')
    lines.append("")
    lines.append("[derivation]")
    lines.append(f'u = "{format_series(model.spec.u)}"')
    lines.append("")
    lines.append("[derivation.character]")
    for name, ell in zip(names, model.spec.character):
        if not ell.is_exactly_zero():
            lines.append(f'{name} = "{format_series(ell)}"')
    for rec in sorted(model.generators, key=lambda r: r.index):
        lines.append("")
        lines.append(f"[generators.{rec.name}]")
        lines.append(f'd = "{format_series(rec.d_value)}"')
        if rec.exponent is not None:
            lines.append(f'exponent = "{format_group_elem(rec.exponent)}"')
    return "\n".join(lines) + "\n"


def grown_path(path) -> Path:
    p = Path(path)
    return p.with_name(p.stem + ".grown" + p.suffix)
