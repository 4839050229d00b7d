"""
Canonical-form API endpoints.
"""
import logging

from fastapi import APIRouter, HTTPException

from app.config import get_settings
from app.models.classify import ItemError
from app.models.errors import InvariantViolation, NpnError
from app.models.requests import CanonItem, CanonRequest, CanonResponse
from app.services.canonical import CanonicalEngine
from app.services.function_io import read_functions
from app.services.truth_table import to_hex

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/canon", tags=["canon"])
settings = get_settings()


@router.post("", response_model=CanonResponse)
def canonicalize_functions(request: CanonRequest):
    """
    Canonical form, witness and stage counters of each table.

    Tables that fail to parse or canonicalize are reported under `errors`
    with their 1-based position; the rest are still processed.
    """
    try:
        engine = CanonicalEngine(
            request.method, request.sers_base, request.symmetry_policy, settings.exhaustive_cap
        )
        records, errors = read_functions(request.functions, request.inputs)
        results = []
        for position, f in records:
            try:
                result = engine.canonicalize(f)
            except InvariantViolation:
                raise
            except NpnError as e:
                errors.append(ItemError(line=position, text=str(f), message=str(e)))
                continue
            out_neg, phase, perm = result.witness.to_fields()
            results.append(CanonItem(
                input_hex=to_hex(f),
                canonical_hex=to_hex(result.canonical),
                out_neg=out_neg,
                phase_mask_hex=phase,
                perm=perm,
                counters=result.counters,
            ))
        errors.sort(key=lambda e: e.line or 0)
        return CanonResponse(method=request.method, results=results, errors=errors)

    except InvariantViolation as e:
        logger.error(f"Invariant violated during canonicalization: {e}")
        raise HTTPException(status_code=500, detail=f"Failed to canonicalize: {str(e)}")
    except NpnError as e:
        raise HTTPException(status_code=400, detail=str(e))
