"""Reading and writing the experiment config format.

The format is sectioned ``key = value`` text::

    [walk]
    coin = hadamard
    steps = 80

    [barrier]
    x = 20
    slit = 0, 5

Several pairs may share a line (``[walk] coin=hadamard steps=80``), ``#``
and ``;`` start comments, and ``slit`` may be repeated. Comma-separated
values are lists. Text values with spaces, commas or comment characters are
written in double quotes, with ``\\"`` and ``\\\\`` as escapes.
"""

import re
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .coins import COIN_NAMES
from .errors import ParseError, UnknownKey, ValidationError
from .experiments import ExperimentConfig, OutputOptions, ScreenSpec
from .lattice import Site
from .topology import AXIS, LENGTH, ORIENTATIONS, WIDTH_UNITS, BarrierSpec, Slit

SECTIONS: Dict[str, Tuple[str, ...]] = {
    "walk": (
        "name",
        "coin",
        "steps",
        "initial_m",
        "initial_n",
        "initial_coin_state",
        "coin_matrix",
        "box_radius",
    ),
    "barrier": ("x", "orientation", "slit", "width_unit", "extent"),
    "screen": ("x", "window_begin", "window_end", "orientation"),
    "output": ("directory", "formats", "filter_nonzero", "eps", "threshold", "products"),
}
REPEATABLE = {("barrier", "slit")}

_TOKEN = re.compile(
    r"""
    (?P<header>\[\s*(?P<section>[A-Za-z_]\w*)\s*\])
    |
    (?P<key>[A-Za-z_]\w*)\s*=\s*
    (?:
        "(?P<quoted>(?:[^"\\]|\\.)*)"
        |
        (?P<value>[^\s,=#;"]+(?:\s*,\s*[^\s,=#;"]+)*)
    )
    """,
    re.VERBOSE,
)
_ESCAPE = re.compile(r"\\(.)")
_BARE = re.compile(r'[^\s,=#;"\\]+')
_COMMENT = "#;"

_TRUE = ("true", "yes", "on", "1")
_FALSE = ("false", "no", "off", "0")


class Entry(NamedTuple):
    value: str
    line: int
    column: int


Sections = Dict[str, Dict[str, List[Entry]]]


def tokenize(text: str) -> Sections:
    """Split config text into ``{section: {key: [entries]}}``."""
    sections: Sections = {}
    current: Optional[str] = None

    for lineno, line in enumerate(text.splitlines(), start=1):
        pos = 0
        while True:
            while pos < len(line) and line[pos].isspace():
                pos += 1
            if pos >= len(line) or line[pos] in _COMMENT:
                break
            match = _TOKEN.match(line, pos)
            if not match:
                raise ParseError(f"cannot parse {line[pos:].strip()!r}", lineno, pos + 1)
            if match.group("header"):
                current = match.group("section")
                if current not in SECTIONS:
                    raise ParseError(f"unknown section [{current}]", lineno, pos + 1)
                if current in sections:
                    raise ParseError(f"section [{current}] appears twice", lineno, pos + 1)
                sections[current] = {}
            else:
                key = match.group("key")
                if current is None:
                    raise ParseError(f"key {key!r} appears before any section", lineno, pos + 1)
                if key not in SECTIONS[current]:
                    raise UnknownKey(key, current, lineno)
                entries = sections[current].setdefault(key, [])
                if entries and (current, key) not in REPEATABLE:
                    raise ParseError(f"key {key!r} repeated in [{current}]", lineno, pos + 1)
                if match.group("value") is not None:
                    value, start = match.group("value"), match.start("value")
                else:
                    value = _ESCAPE.sub(r"\1", match.group("quoted"))
                    start = match.start("quoted") - 1
                entries.append(Entry(value, lineno, start + 1))
            pos = match.end()
    return sections


def _one(section: Dict[str, List[Entry]], key: str) -> Optional[Entry]:
    entries = section.get(key)
    return entries[0] if entries else None


def _int(e: Entry) -> int:
    try:
        return int(e.value)
    except ValueError:
        raise ParseError(f"expected an integer, got {e.value!r}", e.line, e.column) from None


def _float(e: Entry) -> float:
    try:
        return float(e.value)
    except ValueError:
        raise ParseError(f"expected a number, got {e.value!r}", e.line, e.column) from None


def _bool(e: Entry) -> bool:
    v = e.value.lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ParseError(f"expected true or false, got {e.value!r}", e.line, e.column)


def _choice(e: Entry, choices: Sequence[str]) -> str:
    if e.value not in choices:
        raise ParseError(
            f"bad value {e.value!r}, expected one of {', '.join(choices)}", e.line, e.column
        )
    return e.value


def _list(e: Entry) -> List[str]:
    return [part.strip() for part in e.value.split(",")]


def _reals(e: Entry, count: int) -> List[float]:
    parts = _list(e)
    if len(parts) != count:
        raise ParseError(f"expected {count} numbers, got {len(parts)}", e.line, e.column)
    return [_float(Entry(p, e.line, e.column)) for p in parts]


def _complexes(e: Entry, count: int) -> Tuple[complex, ...]:
    reals = _reals(e, 2 * count)
    return tuple(complex(reals[2 * i], reals[2 * i + 1]) for i in range(count))


def _required(section: Dict[str, List[Entry]], name: str, key: str) -> Entry:
    e = _one(section, key)
    if e is None:
        raise ValidationError(f"section [{name}] needs {key!r}")
    return e


def _walk(section: Dict[str, List[Entry]]) -> dict:
    coin = _choice(_required(section, "walk", "coin"), COIN_NAMES)
    steps = _int(_required(section, "walk", "steps"))
    if steps < 0:
        e = _one(section, "steps")
        raise ParseError(f"steps must be >= 0, got {steps}", e.line, e.column)  # type: ignore[union-attr]

    kwargs: dict = {"coin": coin, "steps": steps}
    m = _one(section, "initial_m")
    n = _one(section, "initial_n")
    kwargs["initial_site"] = Site(_int(m) if m else 0, _int(n) if n else 0)

    e = _one(section, "initial_coin_state")
    if e is not None:
        kwargs["initial_coin_state"] = _complexes(e, 4)
    e = _one(section, "coin_matrix")
    if e is not None:
        flat = _complexes(e, 16)
        kwargs["coin_matrix"] = tuple(flat[4 * r : 4 * r + 4] for r in range(4))
    e = _one(section, "box_radius")
    if e is not None:
        kwargs["box_radius"] = _int(e)
    e = _one(section, "name")
    if e is not None:
        kwargs["name"] = e.value
    return kwargs


def _barrier(section: Dict[str, List[Entry]]) -> BarrierSpec:
    x = _int(_required(section, "barrier", "x"))
    e = _one(section, "orientation")
    orientation = _choice(e, ORIENTATIONS) if e else AXIS
    slits = []
    for s in section.get("slit", []):
        parts = _list(s)
        if len(parts) != 2:
            raise ParseError(f"slit needs 'center, width', got {s.value!r}", s.line, s.column)
        center = _int(Entry(parts[0], s.line, s.column))
        width = _float(Entry(parts[1], s.line, s.column))
        slits.append(Slit(center, width))
    e = _one(section, "width_unit")
    width_unit = _choice(e, WIDTH_UNITS) if e else LENGTH
    e = _one(section, "extent")
    extent = _int(e) if e else None
    return BarrierSpec(x, tuple(slits), orientation, extent, width_unit)


def _screen(section: Dict[str, List[Entry]], steps: int) -> ScreenSpec:
    x = _int(_required(section, "screen", "x"))
    b = _one(section, "window_begin")
    e = _one(section, "window_end")
    o = _one(section, "orientation")
    return ScreenSpec(
        x,
        (_int(b) if b else 0, _int(e) if e else steps),
        _choice(o, ORIENTATIONS) if o else AXIS,
    )


def _output(section: Dict[str, List[Entry]]) -> OutputOptions:
    kwargs: dict = {}
    e = _one(section, "directory")
    if e is not None:
        kwargs["directory"] = e.value
    e = _one(section, "formats")
    if e is not None:
        kwargs["formats"] = tuple(_list(e))
    e = _one(section, "filter_nonzero")
    if e is not None:
        kwargs["filter_nonzero"] = _bool(e)
    e = _one(section, "eps")
    if e is not None:
        kwargs["eps"] = _float(e)
    e = _one(section, "threshold")
    if e is not None:
        kwargs["threshold"] = _float(e)
    e = _one(section, "products")
    if e is not None:
        kwargs["products"] = tuple(_list(e))
    return OutputOptions(**kwargs)


def parse_config(text: str) -> ExperimentConfig:
    """
    Args:
        text: config text.

    Returns:
        A validated :class:`ExperimentConfig`.

    Raises ParseError for malformed text or bad values, UnknownKey for keys
    the format doesn't know, and ValidationError for inconsistent setups.
    """
    sections = tokenize(text)
    if "walk" not in sections:
        raise ValidationError("config needs a [walk] section")

    kwargs = _walk(sections["walk"])
    if "barrier" in sections:
        kwargs["barrier"] = _barrier(sections["barrier"])
    if "screen" in sections:
        kwargs["screen"] = _screen(sections["screen"], kwargs["steps"])
    if "output" in sections:
        kwargs["outputs"] = _output(sections["output"])
    return ExperimentConfig(**kwargs)


def _reals_text(values: Sequence[complex]) -> str:
    return ", ".join(f"{c.real!r}, {c.imag!r}" for c in values)


def _text(value: str) -> str:
    if _BARE.fullmatch(value):
        return value
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def render_config(config: ExperimentConfig) -> str:
    """Canonical text for a config; ``parse_config`` reads it back unchanged."""
    lines = [
        "[walk]",
        f"name = {_text(config.name)}",
        f"coin = {config.coin}",
        f"steps = {config.steps}",
        f"initial_m = {config.initial_site.m}",
        f"initial_n = {config.initial_site.n}",
    ]
    if config.initial_coin_state is not None:
        lines.append(f"initial_coin_state = {_reals_text(config.initial_coin_state)}")
    if config.coin_matrix is not None:
        flat = [c for row in config.coin_matrix for c in row]
        lines.append(f"coin_matrix = {_reals_text(flat)}")
    if config.box_radius is not None:
        lines.append(f"box_radius = {config.box_radius}")

    if config.barrier is not None:
        b = config.barrier
        lines += ["", "[barrier]", f"x = {b.x}", f"orientation = {b.orientation}"]
        lines.append(f"width_unit = {b.width_unit}")
        if b.extent is not None:
            lines.append(f"extent = {b.extent}")
        lines += [f"slit = {s.center}, {s.width!r}" for s in b.slits]

    if config.screen is not None:
        s = config.screen
        lines += [
            "",
            "[screen]",
            f"x = {s.x}",
            f"window_begin = {s.window[0]}",
            f"window_end = {s.window[1]}",
            f"orientation = {s.orientation}",
        ]

    o = config.outputs
    lines += [
        "",
        "[output]",
        f"directory = {_text(o.directory)}",
        f"formats = {', '.join(o.formats)}",
        f"filter_nonzero = {'true' if o.filter_nonzero else 'false'}",
        f"eps = {o.eps!r}",
        f"threshold = {o.threshold!r}",
        f"products = {', '.join(o.products)}",
    ]
    return "\n".join(lines) + "\n"
