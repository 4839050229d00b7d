"""
Signature API endpoints.
"""
from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from app.models.errors import NpnError
from app.models.signatures import SignatureReport
from app.services.signatures import signature_report
from app.services.truth_table import parse_hex

router = APIRouter(prefix="/api/signatures", tags=["signatures"])


@router.get("/{table}", response_model=SignatureReport)
def get_signatures(
    table: str,
    inputs: Optional[int] = Query(None, ge=0, le=16, description="Input count; inferred when omitted"),
    sers_base: int = Query(3, ge=2, description="Base of the exponential row sums"),
):
    """Every signature family of one table, plus its variable groupings."""
    try:
        return signature_report(parse_hex(table, inputs), sers_base)
    except NpnError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to compute signatures: {str(e)}")
