"""
AIGER cut-extraction API endpoints.
"""
from typing import Optional

from fastapi import APIRouter, File, Form, HTTPException, UploadFile

from app.config import get_settings
from app.models.errors import NpnError
from app.models.requests import CutsResponse
from app.services.aig_parser import load_aiger
from app.services.cut_enumerator import CutEnumerator
from app.services.truth_table import to_hex

router = APIRouter(prefix="/api/cuts", tags=["cuts"])
settings = get_settings()


@router.post("", response_model=CutsResponse)
def extract_cuts(
    file: UploadFile = File(..., description=".aag or .aig circuit"),
    cut_size: Optional[int] = Form(None, ge=2, le=16),
    cut_limit: Optional[int] = Form(None, ge=1),
    dedupe: bool = Form(False),
):
    """Truth tables of every non-trivial cut with 2..K leaves."""
    k = cut_size or settings.cut_size
    limit = cut_limit or settings.cut_limit
    try:
        aig = load_aiger(file.file.read())
        tables = CutEnumerator(k, limit).extract(aig, dedupe)
    except NpnError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to extract cuts: {str(e)}")

    return CutsResponse(
        cut_size=k,
        cut_limit=limit,
        count=len(tables),
        functions=[to_hex(f) for f in tables],
        inputs=[f.n for f in tables],
    )
