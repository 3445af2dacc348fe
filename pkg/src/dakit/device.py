"""Transistor small-signal data and the reference device survey.

All values are SI (farads, siemens, ohms). A transistor with no output
resistance given is treated as lossless on the drain side (rds = inf),
and ri defaults to 0 for a lossless gate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import CatalogError

_ENTRY_KEYS = {"name", "gm_S", "cgs_F", "cds_F", "ri_ohm", "rds_ohm", "reference"}


@dataclass(frozen=True)
class TransistorModel:
    """Unilateral FET small-signal model used throughout the toolkit."""

    name: str
    gm: float
    cgs: float
    cds: float
    ri: float = 0.0
    rds: float = math.inf
    reference: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            raise CatalogError("transistor name must be non-empty")
        if self.gm <= 0:
            raise CatalogError(f"{self.name}: gm must be positive, got {self.gm}")
        if self.cgs <= 0:
            raise CatalogError(f"{self.name}: cgs must be positive, got {self.cgs}")
        if self.cds <= 0:
            raise CatalogError(f"{self.name}: cds must be positive, got {self.cds}")
        if self.ri < 0:
            raise CatalogError(f"{self.name}: ri must be >= 0, got {self.ri}")
        if self.rds <= 0:
            raise CatalogError(f"{self.name}: rds must be positive, got {self.rds}")


@dataclass(frozen=True)
class Substrate:
    """Board stackup: relative permittivity, height and copper thickness in mm."""

    er: float
    h_mm: float
    t_mm: float = 0.0

    def __post_init__(self) -> None:
        if self.er < 1:
            raise CatalogError(f"relative permittivity must be >= 1, got {self.er}")
        if self.h_mm <= 0:
            raise CatalogError(f"substrate height must be positive, got {self.h_mm}")
        if self.t_mm < 0:
            raise CatalogError(f"conductor thickness must be >= 0, got {self.t_mm}")


@dataclass(frozen=True)
class Catalog:
    """Named collection of transistor models loaded from one source."""

    transistors: tuple[TransistorModel, ...]
    source: str = ""

    def __post_init__(self) -> None:
        seen = set()
        for t in self.transistors:
            if t.name in seen:
                raise CatalogError(f"duplicate transistor name: {t.name!r}")
            seen.add(t.name)

    def get(self, name: str) -> TransistorModel:
        for t in self.transistors:
            if t.name == name:
                return t
        raise CatalogError(f"no transistor named {name!r} in catalog")


@dataclass(frozen=True)
class VerificationRow:
    """One row of the published-amplifier survey.

    effective_capacitance and claimed_limit_hz are numeric; the remaining
    columns are reference metadata kept as printed, not recomputed.
    """

    reference_tag: str
    effective_capacitance: float
    claimed_limit_hz: float
    pout_w: str = ""
    pae_pct: str = ""
    gain_db: str = ""
    achieved_band_ghz: str = ""


def load_catalog(text: str, source: str = "") -> Catalog:
    """Parse a JSON transistor catalog.

    Expected shape: {"transistors": [{"name": ..., "gm_S": ..., "cgs_F": ...,
    "cds_F": ..., "ri_ohm"?: ..., "rds_ohm"?: ..., "reference"?: ...}, ...]}.
    Unknown keys are rejected so silent typos cannot change a design.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"transistors"}:
        raise CatalogError('catalog must be an object with a single "transistors" array')
    entries = doc["transistors"]
    if not isinstance(entries, list):
        raise CatalogError('"transistors" must be an array')
    models = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise CatalogError(f"entry {i} is not an object")
        unknown = set(entry) - _ENTRY_KEYS
        if unknown:
            raise CatalogError(f"entry {i}: unknown keys {sorted(unknown)}")
        missing = {"name", "gm_S", "cgs_F", "cds_F"} - set(entry)
        if missing:
            raise CatalogError(f"entry {i}: missing keys {sorted(missing)}")
        if not isinstance(entry["name"], str):
            raise CatalogError(f"entry {i}: name must be a string")
        for key in ("gm_S", "cgs_F", "cds_F", "ri_ohm", "rds_ohm"):
            if key in entry and not isinstance(entry[key], (int, float)):
                raise CatalogError(f"entry {i}: {key} must be a number")
        if "reference" in entry and not isinstance(entry["reference"], str):
            raise CatalogError(f"entry {i}: reference must be a string")
        models.append(
            TransistorModel(
                name=entry["name"],
                gm=float(entry["gm_S"]),
                cgs=float(entry["cgs_F"]),
                cds=float(entry["cds_F"]),
                ri=float(entry.get("ri_ohm", 0.0)),
                rds=float(entry.get("rds_ohm", math.inf)),
                reference=entry.get("reference", ""),
            )
        )
    return Catalog(transistors=tuple(models), source=source)


def serialize_catalog(catalog: Catalog) -> str:
    """Render a catalog back to its JSON form.

    An infinite rds is expressed by omitting rds_ohm, matching the loader's
    default, so load_catalog(serialize_catalog(c)) reproduces c exactly.
    """
    entries = []
    for t in catalog.transistors:
        entry: dict = {"name": t.name, "gm_S": t.gm, "cgs_F": t.cgs, "cds_F": t.cds}
        entry["ri_ohm"] = t.ri
        if math.isfinite(t.rds):
            entry["rds_ohm"] = t.rds
        entry["reference"] = t.reference
        entries.append(entry)
    return json.dumps({"transistors": entries}, indent=2)


def effective_gate_capacitance(cgs: float, cseries: float | None = None) -> float:
    """Input capacitance seen by the gate line.

    A capacitor placed in series with the gate reduces the loading to the
    series combination cseries*cgs/(cseries+cgs); with no series element
    the line sees cgs itself.
    """
    if cgs <= 0:
        raise CatalogError(f"cgs must be positive, got {cgs}")
    if cseries is None:
        return cgs
    if cseries <= 0:
        raise CatalogError(f"series capacitance must be positive, got {cseries}")
    return cseries * cgs / (cseries + cgs)


def estimate_cgs(cox_per_area: float, width: float, length: float) -> float:
    """Plate-capacitor estimate C = C_ox'' * W * L for a MOS input capacitance.

    cox_per_area is in F/m^2, width and length in metres.
    """
    if cox_per_area < 0 or width < 0 or length < 0:
        raise CatalogError("cox_per_area, width and length must all be >= 0")
    return cox_per_area * width * length


def builtin_table1() -> tuple[VerificationRow, ...]:
    """Survey of published distributed amplifiers with their input-capacitance
    bandwidth limits on 50 ohm lines.

    The row with 1.79 pF belongs to the packaged GaN device used for the
    worked designs elsewhere in this package; its drain capacitance is a
    sixth of the gate capacitance.
    """
    rows = [
        ("[4]", 20e-15, 318e9, "0.06", "12.5", "10.5", "1-160"),
        ("[5]", 97e-15, 65.6e9, "0.12", "14.5", "18.3", "12-46"),
        ("[9]", 0.28e-12, 22.7e9, "0.02", "5-22", "7-13", "1-10"),
        ("[10]", 0.3e-12, 21.2e9, "10.6-24.3", "15.5-26.6", "15.3-23.2", "6-18"),
        ("[13]", 0.3e-12, 21.2e9, "14.5-26.3", "13.2-23.7", "17-21", "6-18"),
        ("[14]", 0.14e-12, 45e9, "0.015", "4-10.6", "9.8", "1-15.2"),
        ("[15]", 1.79e-12, 3.55e9, "13", "27", "22", "DC-3.4"),
        ("[16]", 124e-15, 51e9, "1.26-2.19", "9.4-16.8", "3-5.5", "5-38"),
        ("[17]", 138e-15, 46e9, "0.088", "6", "22", "14-34"),
    ]
    return tuple(VerificationRow(*row) for row in rows)
