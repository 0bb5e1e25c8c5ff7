"""Request/response models shared by the HTTP service and the CLI.

Rationals cross the boundary as "p/q" strings and floats as decimal strings
tagged with their precision, so every payload round-trips losslessly.
"""

from __future__ import annotations

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class EvalRequest(BaseModel):
    r: int = Field(ge=0)
    s: int = Field(ge=0)
    upper: List[str] = []
    lower: List[str] = []
    q: str
    x: str
    mode: Literal["exact", "float"] = "exact"
    precision: int = Field(default=128, ge=2)
    max_terms: int = Field(default=10_000, ge=1)

    @model_validator(mode="after")
    def _counts_match(self):
        if len(self.upper) != self.r or len(self.lower) != self.s:
            raise ValueError(
                f"phi {self.r} {self.s} needs {self.r} upper and {self.s} lower "
                f"parameters, got {len(self.upper)} and {len(self.lower)}"
            )
        return self


class EvalResponse(BaseModel):
    value: str
    mode: Literal["exact", "float"]
    precision: Optional[int] = None
    terms_used: int
    tail_bound: Optional[str] = None
    terminated: bool


class CoeffRequest(BaseModel):
    family: Literal["st", "st2", "uv"]
    k: Optional[int] = None
    m: int
    n: int
    a: Optional[str] = None
    c: str
    x: str
    q: str
    mode: Literal["exact", "float"] = "exact"
    precision: int = Field(default=128, ge=2)

    @model_validator(mode="after")
    def _family_fields(self):
        needs_k = self.family in ("st", "st2")
        if needs_k and (self.k is None or self.a is None):
            raise ValueError(f"family {self.family} needs both k and a")
        if not needs_k and (self.k is not None or self.a is not None):
            raise ValueError("family uv takes neither k nor a")
        return self


class CoeffResponse(BaseModel):
    flavor: Literal["ST", "ST_TILDE", "UV"]
    pair: Dict[str, str]  # e.g. {"S": ..., "T": ...}
    mode: Literal["exact", "float"]
    precision: Optional[int] = None


class BesselRequest(BaseModel):
    kind: Literal[1, 2, 3]
    x: str
    q: str
    nu: Optional[str] = None
    t: Optional[str] = None
    precision: int = Field(default=128, ge=2)

    @model_validator(mode="after")
    def _nu_xor_t(self):
        if (self.nu is None) == (self.t is None):
            raise ValueError("exactly one of nu and t must be given")
        return self


class BesselResponse(BaseModel):
    value: str
    kind: int
    precision: int


class LommelRequest(BaseModel):
    kind: Literal[2, 3]
    m: int
    n: int = 0
    t: str
    q: str


class LommelRow(BaseModel):
    exponent: int
    coefficient: str


class LommelResponse(BaseModel):
    kind: int
    m: int
    n: int
    rows: List[LommelRow]  # coefficient of (x/2)^exponent
    den_order: int  # kind 2 divides by (-x^2/4; q)_{den_order}


class VerifyRequest(BaseModel):
    suite: str = "all"
    max_shift: int = Field(default=1, ge=0)
    trials: int = Field(default=2, ge=1)
    seed: int = 0
    mode: Literal["exact", "float", "both"] = "both"
    order: int = Field(default=32, ge=1)
    precision: int = Field(default=128, ge=2)
    condition: float = 1e3
    case: Optional[dict] = None  # single-case repro, overrides the sweep


class VerifyResponse(BaseModel):
    ok: bool
    report: dict  # canonical, reproducible byte for byte given the config
    wall_time: Optional[float] = None


class BenchRequest(BaseModel):
    k: int
    m: int
    n: int
    repeat: int = Field(default=3, ge=1)
    precision: int = Field(default=128, ge=2)
    seed: int = 0
    params: Optional[Dict[str, str]] = None  # a, c, x, q as "p/q"; drawn if absent


class BenchResponse(BaseModel):
    ok: bool
    result: dict
