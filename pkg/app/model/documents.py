"""
JSON documents for pulses and detuning profiles.

    {"pulse": {"kind": "gaussian", "omega_r": 2.0, "tau": 0.47, "t0": 0.0},
     "detuning": {"kind": "piecewise", "bound": 4.0, "knots": [[t, d], ...]}}
"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from app.model.detuning import DEFAULT_DETUNING_BOUND, DetuningKind, DetuningProfile
from app.model.pulses import PulseEnvelope, PulseKind


class PulseDocument(BaseModel):
    kind: Literal["gaussian", "box"] = "gaussian"
    omega_r: Optional[float] = Field(default=None, ge=0)
    omega: Optional[float] = Field(default=None, ge=0)
    tau: float = Field(gt=0)
    t0: float = 0.0

    @model_validator(mode="after")
    def _check_amplitude(self):
        if self.kind == "gaussian" and self.omega_r is None:
            raise ValueError("gaussian pulse needs omega_r")
        if self.kind == "box" and self.omega is None:
            raise ValueError("box pulse needs omega")
        return self

    def to_domain(self) -> PulseEnvelope:
        if self.kind == "gaussian":
            return PulseEnvelope.gaussian(self.omega_r, self.tau, self.t0)
        return PulseEnvelope.box(self.omega, self.tau)

    @classmethod
    def from_domain(cls, pulse: PulseEnvelope) -> "PulseDocument":
        if pulse.kind is PulseKind.GAUSSIAN:
            return cls(kind="gaussian", omega_r=pulse.amplitude, tau=pulse.tau, t0=pulse.t0)
        return cls(kind="box", omega=pulse.amplitude, tau=pulse.tau)


class DetuningDocument(BaseModel):
    kind: Literal["constant", "linear", "piecewise", "sweep_polarization", "sweep_doppler"] = "constant"
    bound: float = Field(default=DEFAULT_DETUNING_BOUND, gt=0)
    delta: float = 0.0
    slope: float = 0.0
    t_ref: float = 0.0
    knots: List[Tuple[float, float]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_knots(self):
        if self.kind == "piecewise" and not self.knots:
            raise ValueError("piecewise detuning needs knots")
        return self

    @property
    def is_time_dependent(self) -> bool:
        if self.kind == "constant":
            return False
        if self.kind == "linear":
            return self.slope != 0.0
        if self.kind == "piecewise":
            return len({v for _, v in self.knots}) > 1
        return True

    def to_domain(self, pulse: Optional[PulseEnvelope] = None) -> DetuningProfile:
        """Build the profile; sweep kinds resolve against ``pulse``"""
        if self.kind == "constant":
            return DetuningProfile.constant(self.delta, self.bound)
        if self.kind == "linear":
            return DetuningProfile.linear(self.slope, self.t_ref, self.bound)
        if self.kind == "piecewise":
            return DetuningProfile.piecewise([t for t, _ in self.knots], [v for _, v in self.knots], self.bound)
        if pulse is None:
            raise ValueError(f"detuning kind {self.kind} needs the accompanying pulse")
        if self.kind == "sweep_polarization":
            return DetuningProfile.sweep_polarization(pulse.tau, pulse.t0, self.bound)
        return DetuningProfile.sweep_doppler(pulse.tau, self.bound)

    @classmethod
    def from_domain(cls, profile: DetuningProfile) -> "DetuningDocument":
        if profile.kind is DetuningKind.CONSTANT:
            return cls(kind="constant", delta=profile.value, bound=profile.bound)
        if profile.kind is DetuningKind.LINEAR:
            return cls(kind="linear", slope=profile.slope, t_ref=profile.t_ref, bound=profile.bound)
        return cls(kind="piecewise", knots=list(profile.knots), bound=profile.bound)


class ControlDocument(BaseModel):
    """A pulse with its detuning profile"""
    pulse: PulseDocument
    detuning: DetuningDocument = Field(default_factory=DetuningDocument)

    def to_domain(self) -> Tuple[PulseEnvelope, DetuningProfile]:
        pulse = self.pulse.to_domain()
        return pulse, self.detuning.to_domain(pulse)

    @classmethod
    def from_domain(cls, pulse: PulseEnvelope, detuning: DetuningProfile) -> "ControlDocument":
        return cls(pulse=PulseDocument.from_domain(pulse), detuning=DetuningDocument.from_domain(detuning))
