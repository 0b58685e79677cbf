"""
Run configuration: JSON schema, validation and the resolved-config echo.
"""
import json
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from criteria import CriterionKind, InvalidParameterError, PlasticityError
from integrator import EventLocalization, LoadingFactory, SimConfig, Tolerances
from models import MaterialModel, MaterialState


class ConfigError(PlasticityError, ValueError):
    """Invalid run configuration: schema, cross-field or stability failure."""


class _Schema(BaseModel):
    model_config = ConfigDict(extra="forbid")


class MaterialSchema(_Schema):
    regime: CriterionKind = CriterionKind.PERFECT
    E: float = Field(gt=0)
    m: float = Field(gt=0)
    sigma_Y0: float = Field(gt=0)
    K: float = Field(0.0, ge=0)
    H: float = Field(0.0, ge=0)
    omega: float = Field(0.0, ge=0)
    T0: float = Field(300.0, gt=0)
    T_fixed: float = Field(300.0, gt=0)


class InitialSchema(_Schema):
    eps: float = 0.0
    v: float = 0.0
    eps_p: float = 0.0
    xi_i: float = 0.0
    xi_k: float = 0.0
    S_e: float = 0.0
    S_p: float = 0.0
    t: float = 0.0


class FreeLoadingSchema(_Schema):
    kind: Literal["free"] = "free"


class ExternalForceSchema(_Schema):
    kind: Literal["external_force"]
    amplitude: float
    angular_frequency: float = Field(0.0, ge=0)


class PrescribedStrainSchema(_Schema):
    kind: Literal["prescribed_strain"]
    knots: List[Tuple[float, float]] = Field(min_length=2)

    @field_validator("knots")
    @classmethod
    def _increasing(cls, knots):
        times = [t for t, _ in knots]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError(f"knot times must be strictly increasing, got {times}")
        return knots


LoadingSchema = Annotated[
    Union[FreeLoadingSchema, ExternalForceSchema, PrescribedStrainSchema],
    Field(discriminator="kind"),
]


class TolerancesSchema(_Schema):
    admissibility: float = Field(1e-9, gt=0)
    energy: float = Field(1e-6, gt=0)
    kkt: float = Field(1e-9, gt=0)
    momentum: float = Field(1e-12, gt=0)
    entropy: float = Field(1e-9, gt=0)
    thermo_energy: float = Field(1e-6, gt=0)


class RunConfigSchema(_Schema):
    material: MaterialSchema
    initial: InitialSchema = Field(default_factory=InitialSchema)
    loading: LoadingSchema = Field(default_factory=FreeLoadingSchema)
    dt: float = Field(1e-4, gt=0)
    t_end: float
    stride: int = Field(1, ge=1)
    event_localization: EventLocalization = EventLocalization.PER_STEP
    viscosity: float = Field(0.0, ge=0)
    tolerances: TolerancesSchema = Field(default_factory=TolerancesSchema)

    @model_validator(mode="after")
    def _horizon(self):
        if self.t_end <= self.initial.t:
            raise ValueError(
                f"t_end ({self.t_end}) must be greater than initial.t ({self.initial.t})")
        return self


MATERIAL_KEYS = tuple(MaterialSchema.model_fields)


def _fold_flat_material(data: Dict[str, Any]) -> Dict[str, Any]:
    """Move material keys given at top level into the ``material`` object."""
    data = dict(data)
    flat = {key: data.pop(key) for key in MATERIAL_KEYS if key in data}
    if not flat:
        return data
    material = dict(data.get("material") or {})
    duplicated = sorted(set(flat) & set(material))
    if duplicated:
        raise ConfigError(f"material keys given both at top level and in 'material': {duplicated}")
    material.update(flat)
    data["material"] = material
    return data


def format_validation_error(exc: ValidationError) -> str:
    lines = []
    for error in exc.errors():
        path = ".".join(str(part) for part in error["loc"]) or "<root>"
        lines.append(f"{path}: {error['msg']}")
    return "; ".join(lines)


def parse_config_dict(data: Dict[str, Any]) -> SimConfig:
    """Validate a decoded config document and build the SimConfig."""
    if not isinstance(data, dict):
        raise ConfigError(f"config must be a JSON object, got {type(data).__name__}")
    try:
        schema = RunConfigSchema.model_validate(_fold_flat_material(data))
    except ValidationError as exc:
        raise ConfigError(format_validation_error(exc)) from None

    try:
        config = SimConfig(
            model=MaterialModel(**schema.material.model_dump()),
            dt=schema.dt,
            t_end=schema.t_end,
            initial=MaterialState(**schema.initial.model_dump()),
            loading=LoadingFactory.from_dict(schema.loading.model_dump()),
            event_localization=schema.event_localization,
            stride=schema.stride,
            viscosity=schema.viscosity,
            tolerances=Tolerances(**schema.tolerances.model_dump()),
        )
        config.validate()
    except InvalidParameterError as exc:
        raise ConfigError(str(exc)) from None
    return config


def parse_config(text: str) -> SimConfig:
    """Parse a JSON config document into a validated SimConfig."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_config_dict(data)


def load_config(path: Union[str, Path]) -> SimConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    return parse_config(text)


def config_to_dict(config: SimConfig) -> Dict[str, Any]:
    """Fully resolved config, defaults expanded; parse_config_dict inverts it."""
    return {
        "material": config.model.to_dict(),
        "initial": config.initial.to_dict(),
        "loading": config.loading.to_dict(),
        "dt": config.dt,
        "t_end": config.t_end,
        "stride": int(config.stride),
        "event_localization": EventLocalization(config.event_localization).value,
        "viscosity": config.viscosity,
        "tolerances": config.tolerances.to_dict(),
    }


def set_config_value(data: Dict[str, Any], dotted_key: str, value: Any) -> Dict[str, Any]:
    """Copy of ``data`` with ``a.b.c`` set to ``value``, as used by parameter sweeps."""
    result = json.loads(json.dumps(data))
    node = result
    *parents, leaf = dotted_key.split(".")
    for key in parents:
        if not isinstance(node.get(key), dict):
            raise ConfigError(f"'{dotted_key}' does not name a config field")
        node = node[key]
    node[leaf] = value
    return result
