"""Pydantic request/response models for the HTTP service.

Necklaces travel either as their JSON form ``{"joints": [0, 2, 3]}`` or
as the text syntax (``"0,2,3"``, ``"2v1"``, ``"e"``); maps likewise as
``{"src": ..., "tgt": ..., "images": [...]}`` or ``"src>tgt:0,0,1"``.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

MAX_SERVICE_SPINE = 6


class NecklaceIn(BaseModel):
    joints: list[int]


class NecklaceOut(BaseModel):
    joints: list[int]
    beads: list[int]
    spine: int
    dim: int
    degree: tuple[int, int]


class MapIn(BaseModel):
    src: NecklaceIn | str
    tgt: NecklaceIn | str
    images: list[int]


class MapOut(BaseModel):
    src: NecklaceOut
    tgt: NecklaceOut
    images: list[int]
    text: str


class EnumerateRequest(BaseModel):
    max_spine: int = Field(default=4, ge=0, le=MAX_SERVICE_SPINE)


class EnumerateResponse(BaseModel):
    max_spine: int
    count: int
    necklaces: list[NecklaceOut]


class HomRequest(BaseModel):
    src: NecklaceIn | str
    tgt: NecklaceIn | str


class HomResponse(BaseModel):
    src: NecklaceOut
    tgt: NecklaceOut
    count: int
    maps: list[MapOut]


class ClassifyRequest(BaseModel):
    map: MapIn | str


class ClassifyResponse(BaseModel):
    map: MapOut
    active: bool
    inert: bool
    mono: bool
    epi: bool
    bead_reducing: bool
    spine_collapsing: bool


class FactorRequest(BaseModel):
    map: MapIn | str
    mode: Literal["epi-mono", "active-inert", "full-chain"] = "epi-mono"


class FactorPart(MapOut):
    role: str


class FactorResponse(BaseModel):
    map: MapOut
    mode: str
    parts: list[FactorPart]


class CheckRequest(BaseModel):
    name: Literal[
        "reedy",
        "left-fibrant",
        "wedge-right-fibration",
        "divisible",
        "simple",
        "monoidal",
    ]
    max_spine: int = Field(default=4, ge=0, le=MAX_SERVICE_SPINE)


class CheckResponse(BaseModel):
    check: str
    window: int | None
    passed: bool = Field(alias="pass")
    hypotheses: dict[str, bool] | None = None
    failures: list[dict]

    model_config = {"populate_by_name": True}


class DayRepRequest(BaseModel):
    x1: NecklaceIn | str
    x2: NecklaceIn | str
    max_spine: int = Field(default=4, ge=0, le=MAX_SERVICE_SPINE)


class DayRepObject(BaseModel):
    necklace: str
    classes: int
    target: int
    bijective: bool


class DayRepResponse(BaseModel):
    check: str
    window: int
    passed: bool = Field(alias="pass")
    objects: list[DayRepObject]
    failures: list[dict]

    model_config = {"populate_by_name": True}


class HealthResponse(BaseModel):
    status: str
