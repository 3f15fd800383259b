"""Built-in parameter sets for the neutral group-IV vacancy centers in diamond.

Each preset carries the model parameters of one defect and the reference
splitting its spectrum is expected to reproduce, for regression checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hamiltonian import PjtParams

__all__ = ["PRESETS", "DefectPreset", "get_preset"]


@dataclass(frozen=True)
class DefectPreset:
    name: str
    params: PjtParams
    reference_delta: float


PRESETS: dict[str, DefectPreset] = {
    "SiV": DefectPreset(
        name="SiV",
        params=PjtParams(hbar_omega=75.9, lambda_corr=78.3, xi_corr=45.0, f_g=95.0, f_u=103.0),
        reference_delta=6.7,
    ),
    "GeV": DefectPreset(
        name="GeV",
        params=PjtParams(hbar_omega=78.2, lambda_corr=88.6, xi_corr=40.0, f_g=83.0, f_u=112.0),
        reference_delta=7.6,
    ),
    "SnV": DefectPreset(
        name="SnV",
        params=PjtParams(hbar_omega=81.3, lambda_corr=99.5, xi_corr=42.0, f_g=67.0, f_u=120.0),
        reference_delta=9.3,
    ),
    "PbV": DefectPreset(
        name="PbV",
        params=PjtParams(hbar_omega=81.4, lambda_corr=119.0, xi_corr=36.0, f_g=52.0, f_u=125.0),
        reference_delta=10.8,
    ),
}


def get_preset(name: str) -> DefectPreset:
    """Look up a preset by name, case-insensitively.

    Raises:
        ValueError: unknown name; the message lists the available presets.
    """
    key = str(name).strip().lower()
    for preset in PRESETS.values():
        if preset.name.lower() == key:
            return preset
    available = ", ".join(PRESETS)
    raise ValueError(f"unknown preset {name!r}; available presets: {available}")
