"""
File formats shared by the library and the command line.

Every document is a JSON object tagged with "format": "dissecta/1".
`dump_document` writes the canonical form: sorted keys, two space indent,
absent optional fields left out.
"""

import json
import logging
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Type, TypeVar

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    ValidationError,
    model_validator,
)

from dissecta.core.config import get_config
from dissecta.core.errors import ParseError, TooLargeError
from dissecta.core.poset import Poset, build_poset

logger = logging.getLogger(__name__)

FORMAT = "dissecta/1"

ElementId = Annotated[str, BeforeValidator(str)]
Pair = Tuple[ElementId, ElementId]

D = TypeVar("D", bound=BaseModel)


class Document(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: Literal["dissecta/1"] = Field(FORMAT, description="format tag")


class ElementAttributes(BaseModel):
    model_config = ConfigDict(extra="forbid")

    chi: Optional[int] = Field(None, description="Euler characteristic of the flat")
    dim: Optional[int] = Field(None, ge=0, description="dimension of the flat")


class PosetDocument(Document):
    elements: List[ElementId]
    covers: Optional[List[Pair]] = Field(None, description="covering pairs (a, b), a below b")
    relation: Optional[List[Pair]] = Field(None, description="the full order relation")
    attrs: Dict[ElementId, ElementAttributes] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _one_pair_list(self) -> "PosetDocument":
        if (self.covers is None) == (self.relation is None):
            raise ValueError("give exactly one of 'covers' and 'relation'")
        return self

    def to_poset(self, max_elements: Optional[int] = None) -> Poset:
        cap = max_elements or get_config().limits.max_elements
        if len(self.elements) > cap:
            raise TooLargeError(
                f"document has {len(self.elements)} elements, the limit is {cap}"
            )
        if self.covers is not None:
            return build_poset(self.elements, self.covers, "covers")
        return build_poset(self.elements, self.relation, "relation")


class ArrangementDocument(PosetDocument):
    top: ElementId
    hyperplanes: Optional[List[ElementId]] = None


class SetModelDocument(Document):
    ground: List[ElementId]
    subspaces: List[List[ElementId]] = Field(default_factory=list)
    chambers: List[List[ElementId]]
    refinement: Optional[List[List[ElementId]]] = Field(
        None, description="meet-refinement L; the intersection poset when absent"
    )


class ProfileDocument(Document):
    chamber_chi: Dict[int, int] = Field(description="dimension -> chamber Euler characteristic")
    flat_chi: Optional[Dict[int, int]] = Field(
        None, description="dimension -> flat Euler characteristic"
    )


class SubsetDocument(Document):
    elements: List[ElementId]


def parse_document(text: str, model: Type[D]) -> D:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"invalid {model.__name__}: {e}") from e


def read_document(path: str, model: Type[D]) -> D:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    logger.debug("read %s as %s", path, model.__name__)
    return parse_document(text, model)


def dump_document(doc: BaseModel) -> str:
    data = doc.model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
