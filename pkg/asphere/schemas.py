"""JSON shapes of everything the command line prints.

Domain objects produce plain dicts; every dict is validated against its model before printing.
"""
from __future__ import annotations

import json
from typing import Dict, List, Optional, Type

from pydantic import BaseModel, ConfigDict, Field


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class EdgeModel(_Model):
    id: str
    label: str
    source: str
    target: str
    relator: int


class StarGraphModel(_Model):
    vertices: List[str]
    edges: List[EdgeModel]
    relator_cycles: List[List[str]]


class RelatorSumModel(_Model):
    relator: int
    edges: List[str]
    sum: str
    ok: bool


class LightCycleModel(_Model):
    path: str
    weight: str
    label: str
    kind: str = Field(alias="class")


class WeightReportModel(_Model):
    condition1: List[RelatorSumModel]
    condition2: List[LightCycleModel]
    condition3: List[str]
    exhaustive: bool
    verdict: str
    reasons: List[str]
    weights: Optional[Dict[str, str]] = None


class RationalModel(_Model):
    num: int
    den: int


class ClassificationModel(_Model):
    admitted: List[str]
    relations: str
    N: int
    verdict: str
    bound: str
    bound_value: RationalModel
    citation: Optional[str]
    notes: List[str]
    weights: Optional[Dict[str, str]]


class ExceptionModel(_Model):
    item: int
    text: str
    patterns: List[List[str]]


class CurvatureModel(_Model):
    num: int
    den: int
    text: str
    shape: List[int]
    capable: List[str] = []
    excluded: List[List[str]] = []


SCHEMAS: Dict[str, Type[BaseModel]] = {
    "stargraph": StarGraphModel,
    "weight-report": WeightReportModel,
    "classification": ClassificationModel,
    "exception": ExceptionModel,
    "curvature": CurvatureModel,
}


def dump(model: Type[BaseModel], data: object) -> str:
    """Validate `data` against `model` and print it with sorted keys."""
    validated = model.model_validate(data)
    payload = validated.model_dump(mode="json", by_alias=True, exclude_unset=True)
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def schema_text(name: str) -> str:
    return json.dumps(SCHEMAS[name].model_json_schema(), indent=2, sort_keys=True)
