"""Enumeration of benchmark test conditions from two-factor perturbation grids.

The default configuration yields 69 conditions: one clean condition plus all
non-identity cells of the four sequence grids (salt & pepper then Gaussian,
the reverse, salt & pepper then rotation, the reverse). Each grid's
all-identity cell is byte-identical to clean and is deduplicated; cells with
one identity component stay as distinct single-factor conditions because
their random realizations differ per grid.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from mcvbench.perturb import PerturbationKind, PerturbationSpec


class Grid(str, Enum):
    CLEAN = "CLEAN"
    SP_GA = "SP_GA"
    GA_SP = "GA_SP"
    SP_RO = "SP_RO"
    RO_SP = "RO_SP"


# factor kinds per grid, in application order
_GRID_KINDS: dict[Grid, tuple[PerturbationKind, PerturbationKind]] = {
    Grid.SP_GA: (PerturbationKind.SALT_PEPPER, PerturbationKind.GAUSSIAN),
    Grid.GA_SP: (PerturbationKind.GAUSSIAN, PerturbationKind.SALT_PEPPER),
    Grid.SP_RO: (PerturbationKind.SALT_PEPPER, PerturbationKind.ROTATION),
    Grid.RO_SP: (PerturbationKind.ROTATION, PerturbationKind.SALT_PEPPER),
}

CLEAN_LABEL = "clean"


@dataclass(frozen=True)
class GridConfig:
    """Severity levels for the three perturbation factors.

    Levels must be strictly increasing; 0 (or 0 degrees) is the identity
    level and is present in the default configuration.
    """

    sp_levels: tuple[float, ...] = (0.0, 0.1, 0.15, 0.2)
    ga_levels: tuple[float, ...] = (0.0, 0.1, 0.15, 0.2)
    ro_levels: tuple[float, ...] = (-60.0, -30.0, 0.0, 30.0, 60.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sp_levels", tuple(float(v) for v in self.sp_levels))
        object.__setattr__(self, "ga_levels", tuple(float(v) for v in self.ga_levels))
        object.__setattr__(self, "ro_levels", tuple(float(v) for v in self.ro_levels))
        for name, levels in (("sp_levels", self.sp_levels), ("ga_levels", self.ga_levels), ("ro_levels", self.ro_levels)):
            if not levels:
                raise ValueError(f"{name} must not be empty")
            if any(b <= a for a, b in zip(levels, levels[1:])):
                raise ValueError(f"{name} must be strictly increasing, got {levels}")
        # severity ranges are enforced by PerturbationSpec; probe them eagerly
        for level in self.sp_levels:
            if level != 0.0:
                PerturbationSpec(PerturbationKind.SALT_PEPPER, level)
        for level in self.ga_levels:
            if level != 0.0:
                PerturbationSpec(PerturbationKind.GAUSSIAN, level)
        for level in self.ro_levels:
            if level != 0.0:
                PerturbationSpec(PerturbationKind.ROTATION, level)

    def levels_for(self, kind: PerturbationKind) -> tuple[float, ...]:
        return {
            PerturbationKind.SALT_PEPPER: self.sp_levels,
            PerturbationKind.GAUSSIAN: self.ga_levels,
            PerturbationKind.ROTATION: self.ro_levels,
        }[kind]


@dataclass(frozen=True)
class Condition:
    """One benchmark test condition: a grid cell with its effective specs.

    `specs` holds only the non-identity components, in application order;
    it is empty exactly for the clean condition. `ordinal` is the stable
    1-based enumeration index; `label` follows the canonical grammar and is
    the primary key in all interfaces (ordinals disambiguate duplicate
    single-factor labels across grids).
    """

    ordinal: int
    grid: Grid
    cell: tuple[float, float] | None
    specs: tuple[PerturbationSpec, ...] = field(default=())
    label: str = CLEAN_LABEL

    @property
    def directory(self) -> str:
        """Per-condition corpus subdirectory name."""
        return f"{self.label}#{self.ordinal}"


def _format_level(value: float) -> str:
    """Minimal decimal form: 0.15 -> '0.15', 30.0 -> '30'."""
    return f"{value:g}"


def _component_label(kind: PerturbationKind, level: float) -> str:
    if kind is PerturbationKind.SALT_PEPPER:
        return f"SP{_format_level(level)}"
    if kind is PerturbationKind.GAUSSIAN:
        return f"GA{_format_level(level)}"
    if level < 0:
        return f"RL{_format_level(abs(level))}"
    return f"RR{_format_level(level)}"


def canonical_label(grid: Grid, cell: tuple[float, float] | None) -> str:
    """Canonical condition label for a grid cell.

    Identity components are omitted; noise components render as SP{d}/GA{v},
    rotations as RL{n} (counterclockwise) or RR{n} (clockwise), concatenated
    in application order. The all-identity cell is "clean".
    """
    if grid is Grid.CLEAN:
        return CLEAN_LABEL
    if cell is None:
        raise ValueError(f"grid {grid.value} requires a (level1, level2) cell")
    kinds = _GRID_KINDS[grid]
    parts = [_component_label(kind, level) for kind, level in zip(kinds, cell) if level != 0.0]
    return "".join(parts) if parts else CLEAN_LABEL


_LABEL_TOKEN = re.compile(r"(SP|GA|RL|RR)(\d+(?:\.\d+)?)")


def parse_label(label: str) -> tuple[PerturbationSpec, ...]:
    """Effective perturbation sequence encoded by a canonical label.

    Inverse of :func:`canonical_label` up to identity components, which are
    never rendered. Raises ValueError for anything outside the grammar.
    """
    if label == CLEAN_LABEL:
        return ()
    specs: list[PerturbationSpec] = []
    pos = 0
    for match in _LABEL_TOKEN.finditer(label):
        if match.start() != pos:
            raise ValueError(f"unparseable condition label: {label!r}")
        prefix, value = match.group(1), float(match.group(2))
        if value == 0.0:
            raise ValueError(f"identity component in label: {label!r}")
        if prefix == "SP":
            specs.append(PerturbationSpec(PerturbationKind.SALT_PEPPER, value))
        elif prefix == "GA":
            specs.append(PerturbationSpec(PerturbationKind.GAUSSIAN, value))
        elif prefix == "RL":
            specs.append(PerturbationSpec(PerturbationKind.ROTATION, -value))
        else:
            specs.append(PerturbationSpec(PerturbationKind.ROTATION, value))
        pos = match.end()
    if pos != len(label) or not specs:
        raise ValueError(f"unparseable condition label: {label!r}")
    return tuple(specs)


def enumerate_conditions(config: GridConfig) -> tuple[Condition, ...]:
    """All test conditions of a configuration, with stable ordinals.

    Emits the clean condition first (only when some grid contains an
    all-identity cell, which it replaces), then every cell of SP_GA, GA_SP,
    SP_RO and RO_SP in row-major order over the configured level lists,
    skipping each grid's all-identity cell. The count therefore satisfies
    sum(grid cells) - (number of all-identity cells) + (1 if any existed).
    """
    grids = [(grid, config.levels_for(kinds[0]), config.levels_for(kinds[1])) for grid, kinds in _GRID_KINDS.items()]
    any_identity_cell = any(0.0 in first and 0.0 in second for _, first, second in grids)

    conditions: list[Condition] = []
    ordinal = 1
    if any_identity_cell:
        conditions.append(Condition(ordinal=ordinal, grid=Grid.CLEAN, cell=None))
        ordinal += 1
    for grid, first_levels, second_levels in grids:
        kinds = _GRID_KINDS[grid]
        for first in first_levels:
            for second in second_levels:
                if first == 0.0 and second == 0.0:
                    continue
                specs = tuple(
                    PerturbationSpec(kind, level)
                    for kind, level in zip(kinds, (first, second))
                    if level != 0.0
                )
                conditions.append(
                    Condition(
                        ordinal=ordinal,
                        grid=grid,
                        cell=(first, second),
                        specs=specs,
                        label=canonical_label(grid, (first, second)),
                    )
                )
                ordinal += 1
    return tuple(conditions)
