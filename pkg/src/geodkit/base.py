"""Base record type with serialization helpers, and the pydantic field type for angles."""

import json
from typing import Annotated, Any, Dict, Optional, Type, TypeVar

import yaml
from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer, WithJsonSchema

from .numerics import ExactReal, from_literal

T = TypeVar("T", bound="Record")


ANGLE_LITERAL_SCHEMA: Dict[str, Any] = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "rational"},
                "p": {"type": "integer"},
                "q": {"type": "integer", "exclusiveMinimum": 0},
            },
            "required": ["kind", "p", "q"],
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "quadratic"},
                "p": {"type": "integer"},
                "q": {"type": "integer"},
                "d": {"type": "integer", "minimum": 2},
                "r": {"type": "integer"},
            },
            "required": ["kind", "p", "q", "d"],
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "decimal"},
                "value": {"type": "string"},
                "digits": {"type": "integer", "minimum": 1},
                "expr": {"type": "string"},
                "irrational": {"type": "boolean"},
            },
            "required": ["kind", "value", "digits"],
        },
    ],
    "description": "Exact real literal (rational, quadratic irrational or certified decimal)",
}

Real = Annotated[
    ExactReal,
    BeforeValidator(from_literal),
    PlainSerializer(lambda value: value.to_literal()),
    WithJsonSchema(ANGLE_LITERAL_SCHEMA),
]
"""Pydantic field type for exact reals, (de)serialized as angle literals."""


class Record(BaseModel):
    """Immutable pydantic record with dict/JSON/YAML round-trip helpers."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @classmethod
    def json_schema(cls, title: Optional[str] = None) -> Dict[str, Any]:
        """
        Generate JSON Schema for this record.

        Args:
            title: Optional title for the schema

        Returns:
            JSON Schema as a dictionary
        """
        schema = cls.model_json_schema()
        if title:
            schema["title"] = title
        return schema

    def to_dict(self, exclude_none: bool = True) -> Dict[str, Any]:
        """Convert to a JSON-compatible dictionary."""
        return self.model_dump(mode="json", exclude_none=exclude_none)

    def to_json(self, exclude_none: bool = True, indent: int = 2) -> str:
        """Convert to a JSON string."""
        return json.dumps(self.to_dict(exclude_none), indent=indent)

    def to_yaml(self, exclude_none: bool = True) -> str:
        """Convert to a YAML string."""
        return yaml.safe_dump(self.to_dict(exclude_none), default_flow_style=False, sort_keys=False)

    @classmethod
    def from_dict(cls: Type[T], data: Dict[str, Any]) -> T:
        """Create an instance from a dictionary."""
        return cls.model_validate(data)

    @classmethod
    def from_json(cls: Type[T], json_str: str) -> T:
        """Create an instance from a JSON string."""
        return cls.from_dict(json.loads(json_str))

    @classmethod
    def from_yaml(cls: Type[T], yaml_str: str) -> T:
        """Create an instance from a YAML string."""
        return cls.from_dict(yaml.safe_load(yaml_str))
