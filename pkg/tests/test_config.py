import numpy as np
from pytest import raises

from slitwalk.coins import fourier
from slitwalk.config import parse_config, render_config, tokenize
from slitwalk.errors import ConfigError, ParseError, UnknownKey, ValidationError
from slitwalk.experiments import ExperimentConfig, OutputOptions, ScreenSpec, preset, preset_names
from slitwalk.lattice import Site
from slitwalk.topology import DIAGONAL, BarrierSpec, Slit

FIG2 = """
[walk] coin=hadamard steps=80
[barrier] x=20 width_unit=sites slit=0,5
"""

LONG_FORM = """
# a double slit, one key per line
[walk]
name = long_form
coin = grover      ; trailing comment
steps = 40
initial_m = 2
initial_n = 0

[barrier]
x = 10
orientation = axis
slit = -4, 1
slit = 4, 1

[screen]
x = 30
window_begin = 5

[output]
directory = results/long
filter_nonzero = yes
eps = 1e-14
threshold = 0.1
products = screen, extrema
"""


def test_compact_form():
    config = parse_config(FIG2)
    fig2 = preset("fig2")
    assert config.coin == fig2.coin
    assert config.steps == fig2.steps
    assert config.barrier == fig2.barrier
    assert config.screen is None
    assert config.outputs == OutputOptions()


def test_long_form():
    config = parse_config(LONG_FORM)
    assert config.name == "long_form"
    assert config.initial_site == Site(2, 0)
    assert config.barrier.slits == (Slit(-4, 1), Slit(4, 1))
    assert config.screen == ScreenSpec(30, (5, 40))
    assert config.outputs.directory == "results/long"
    assert config.outputs.filter_nonzero
    assert config.outputs.eps == 1e-14
    assert config.outputs.products == ("screen", "extrema")


def test_solid_wall():
    config = parse_config("[walk] coin=hadamard steps=30\n[barrier]\nx = 10\n")
    assert config.barrier.slits == ()


def test_bad_coin_name():
    with raises(ParseError) as e:
        parse_config("[walk] coin=hadamar steps=80")
    assert "hadamar" in str(e.value)
    assert e.value.line == 1
    assert e.value.column == 13


def test_parse_errors():
    with raises(UnknownKey) as e:
        parse_config("[walk]\ncoin = hadamard\nspeed = 3\n")
    assert e.value.line == 3

    with raises(ParseError) as e:
        parse_config("[walk]\ncoin = hadamard\nsteps = eighty\n")
    assert e.value.line == 3

    with raises(ParseError):
        parse_config("coin = hadamard")
    with raises(ParseError):
        parse_config("[walk] coin=hadamard steps=3\n[slits]\n")
    with raises(ParseError):
        parse_config("[walk] coin=hadamard coin=grover steps=3")
    with raises(ParseError):
        parse_config("[walk] coin=hadamard steps=3 !!")
    with raises(ParseError):
        parse_config("[walk] coin=hadamard steps=3 initial_coin_state=1,0,0,0")
    with raises(ParseError):
        parse_config("[walk] coin=hadamard steps=3\n[barrier] x=2 slit=0")
    with raises(ParseError):
        parse_config("[walk] coin=hadamard steps=3\n[output] filter_nonzero=maybe")

    # every config error is also a ConfigError
    with raises(ConfigError):
        parse_config("[walk] coin=hadamard steps=3 colour=red")


def test_validation_errors():
    with raises(ValidationError):
        parse_config("[barrier] x=20")
    with raises(ValidationError):
        parse_config("[walk] coin=hadamard")
    with raises(ValidationError):
        parse_config("[walk] coin=hadamard steps=10\n[barrier] slit=0,5")
    # screen behind the barrier
    with raises(ValidationError):
        parse_config(
            "[walk] coin=hadamard steps=100\n[barrier] x=20 slit=0,5\n[screen] x=10"
        )


def test_tokenize():
    sections = tokenize("[walk] coin = hadamard steps=3\n[barrier]\nslit = 1, 1\nslit=3,1")
    assert [e.value for e in sections["barrier"]["slit"]] == ["1, 1", "3,1"]
    assert sections["walk"]["steps"][0].line == 1


def test_quoted_values():
    config = parse_config(
        '[walk] name = "two slits; wide" coin=hadamard steps=3  # done\n'
        '[output] directory="out dir/run #2"\n'
    )
    assert config.name == "two slits; wide"
    assert config.outputs.directory == "out dir/run #2"

    with raises(ParseError):
        parse_config('[walk] name="open coin=hadamard steps=3')
    with raises(ValidationError):
        parse_config('[walk] name="" coin=hadamard steps=3')


def test_barrier_width_unit_and_extent():
    config = parse_config(
        "[walk] coin=hadamard steps=30\n[barrier] x=10 width_unit=sites extent=40 slit=0,3"
    )
    assert config.barrier.width_unit == "sites"
    assert config.barrier.extent == 40
    assert parse_config("[walk] coin=hadamard steps=30\n[barrier] x=10").barrier.extent is None
    with raises(ParseError):
        parse_config("[walk] coin=hadamard steps=30\n[barrier] x=10 width_unit=inches")


def test_round_trip():
    configs = [preset(name) for name in preset_names()]
    configs.append(parse_config(LONG_FORM))
    configs.append(
        ExperimentConfig(
            coin="custom",
            steps=20,
            initial_site=Site(-2, 4),
            initial_coin_state=(0.5, 0.5j, 0.5j, -0.5),
            coin_matrix=fourier().matrix,
            box_radius=40,
            barrier=BarrierSpec(5, (Slit(-3, 2.5),), DIAGONAL),
            screen=ScreenSpec(15, (3, 17), DIAGONAL),
            outputs=OutputOptions(directory="x", eps=1.0 / 3, threshold=0.2),
            name="everything",
        )
    )
    configs += [
        ExperimentConfig(coin="hadamard", steps=4, name="double slit"),
        ExperimentConfig(coin="hadamard", steps=4, name='a "quoted", back\\slashed; name'),
        ExperimentConfig(coin="hadamard", steps=4, outputs=OutputOptions(directory="runs#1")),
        ExperimentConfig(coin="hadamard", steps=30, barrier=BarrierSpec(10, extent=20)),
    ]
    for config in configs:
        text = render_config(config)
        assert parse_config(text) == config
        assert render_config(parse_config(text)) == text


def test_random_coin_matrix_round_trip(rng):
    from slitwalk.coins import random_coin

    matrix = random_coin(rng).matrix
    config = ExperimentConfig(coin="custom", steps=3, coin_matrix=matrix)
    parsed = parse_config(render_config(config))
    assert np.array_equal(np.array(parsed.coin_matrix), matrix)
