"""
Pydantic models for the CLI: the parsed command request and the JSON input
documents each subcommand reads. Validation failures here are request errors
(exit status 2); anything the engine rejects afterwards is a domain error
(exit status 1).

The document models check shape only. Scalars stay as given ("1/2", 0.5, 1)
so core's parse_scalar decides exact vs floating mode.
"""

import json
import os
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from cli.config import DEFAULT_SEED, FIXTURES_DIR

Scalar = Union[int, float, str]

SUBCOMMANDS = ("tp", "oracle", "classify", "decompose", "gen", "omp", "noclone", "selftest")
OMP_VERBS = ("validate", "tp", "strong", "morphism")


def resolve_input(ref: str) -> str:
    """A path, or a bare fixture name looked up in FIXTURES_DIR (".json"
    optional). Inline JSON is returned unchanged."""
    if ref.lstrip().startswith(("{", "[")):
        return ref
    if os.path.isfile(ref):
        return ref
    for name in (ref, f"{ref}.json"):
        cand = os.path.join(FIXTURES_DIR, name)
        if os.path.isfile(cand):
            return cand
    raise ValueError(f"input {ref!r} is neither inline JSON, a file, nor a fixture in {FIXTURES_DIR}")


def load_input(ref: str) -> Any:
    """Inline JSON or the JSON content of a resolved file."""
    if ref.lstrip().startswith(("{", "[")):
        return json.loads(ref)
    with open(ref, encoding="utf-8") as f:
        return json.load(f)


class CommandRequest(BaseModel):
    """One CLI invocation, after argparse."""

    model_config = ConfigDict(extra="forbid")

    subcommand: Literal["tp", "oracle", "classify", "decompose", "gen", "omp", "noclone", "selftest"]
    input: Optional[str] = None
    out: Optional[str] = None
    floating: bool = False        # coerce loaded exact projections to floating mode
    seed: int = DEFAULT_SEED

    # tp
    path: str = "algebraic"
    # omp
    verb: Optional[Literal["validate", "tp", "strong", "morphism"]] = None
    p: Optional[str] = None
    q: Optional[str] = None
    # gen
    K: Optional[Literal["R", "C", "H", "O"]] = None
    m: Optional[int] = Field(default=None, ge=1)
    n: Optional[int] = Field(default=None, ge=1)
    s: Optional[str] = None
    exact: bool = False
    conjugate: bool = False
    # noclone / selftest
    trials: Optional[int] = Field(default=None, ge=0)
    refine_rounds: int = Field(default=200, ge=0)

    @field_validator("input")
    @classmethod
    def _input_exists(cls, v: Optional[str]) -> Optional[str]:
        return None if v is None else resolve_input(v)

    @model_validator(mode="after")
    def _required_arguments(self) -> "CommandRequest":
        if self.subcommand in ("tp", "oracle", "classify", "decompose") and self.input is None:
            raise ValueError(f"{self.subcommand} needs --input (a pair document)")
        if self.subcommand == "omp":
            if self.verb is None or self.input is None:
                raise ValueError("omp needs a verb and --input")
            if self.verb == "tp" and (self.p is None or self.q is None):
                raise ValueError("omp tp needs --p and --q")
        if self.subcommand == "gen" and self.input is None:
            missing = [k for k in ("K", "m", "n", "s") if getattr(self, k) is None]
            if missing:
                raise ValueError(f"gen needs --input or all of --K --m --n --s (missing {missing})")
        return self


# ---------------------------------------------------------------------------
# Input documents
# ---------------------------------------------------------------------------

class PairDocument(BaseModel):
    """{"p": <projection>, "q": <projection>}; extra keys (a gen report's
    "spec", "forward", ...) are ignored so `gen` output feeds `tp` directly."""

    p: Dict[str, Any]
    q: Dict[str, Any]


class ConstructionDocument(BaseModel):
    """Mirror of core's construction-spec JSON; see example_gen.spec_from_json."""

    K: Literal["R", "C", "H", "O"]
    m: int = Field(ge=1)
    n: int = Field(ge=1)
    s: Scalar
    u: Optional[List[List[Any]]] = None
    seed: int = 0
    exact: Optional[bool] = None
    conjugate: bool = False

    def to_spec_doc(self) -> Dict[str, Any]:
        return self.model_dump(exclude_none=True)


class LogicDocument(BaseModel):
    """Blocks format or raw format, plus optional declared states."""

    model_config = ConfigDict(extra="allow")

    blocks: Optional[List[List[str]]] = None
    elements: Optional[List[str]] = None
    orthocomplement: Optional[Dict[str, str]] = None
    states: Optional[List[Dict[str, Scalar]]] = None

    @model_validator(mode="after")
    def _one_format(self) -> "LogicDocument":
        if self.blocks is None and (self.elements is None or self.orthocomplement is None):
            raise ValueError("a logic needs 'blocks' or both 'elements' and 'orthocomplement'")
        return self


class MorphismDocument(BaseModel):
    source: LogicDocument
    target: LogicDocument
    mapping: Dict[str, str]
    source_states: Optional[List[Dict[str, Scalar]]] = None
    target_states: Optional[List[Dict[str, Scalar]]] = None
