from pathlib import Path

import pytest

from dvfields.errors import ParseError
from dvfields.hahn import monomial
from dvfields.modelfile import emit_model, load_model, model_from_dict
from dvfields.ordgroup import ZZW

ROOT = Path(__file__).parent.parent


def test_load_stock_models():
    for name in ("base.toml", "wild.toml", "qline.toml"):
        model, names = load_model(ROOT / "models" / name)
        assert model.group.rank == len(names)


def test_coeff_short_form():
    model, _ = model_from_dict(
        {
            "group": {"kinds": ["Z", "Z"], "names": ["omega", "unit"]},
            "derivation": {
                "u": "1",
                "character": {"omega": "t^[-1;0]"},
                "coeff": {"th1": "t^[0;-3]"},
            },
        }
    )
    assert 1 in model.spec.coeff_table
    x = monomial(ZZW, ZZW.elem([0, 1]), __import__("dvfields").KElem.theta(1))
    assert model.val_partial(x).coords == (0, -2)


def test_emit_load_roundtrip():
    model, names = load_model(ROOT / "models" / "wild.toml")
    model.solve_density(
        monomial(ZZW, ZZW.zero()), monomial(ZZW, ZZW.elem([-1, 0])), ZZW.elem([0, 2])
    )
    text = emit_model(model, names)
    import tomli

    reloaded, names2 = model_from_dict(tomli.loads(text))
    assert names2 == names
    assert set(reloaded.spec.coeff_table) == set(model.spec.coeff_table)
    for idx, d in model.spec.coeff_table.items():
        assert (reloaded.spec.coeff_table[idx] - d).is_exactly_zero()


def test_bad_files_cite_parse_errors():
    with pytest.raises(ParseError):
        model_from_dict({"group": {}})
    with pytest.raises(ParseError):
        model_from_dict({"group": {"kinds": ["Z"], "names": ["a", "b"]}})
    with pytest.raises(ParseError):
        model_from_dict(
            {
                "group": {"kinds": ["Z", "Z"]},
                "derivation": {"character": {"nope": "0"}},
            }
        )
