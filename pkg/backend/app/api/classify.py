"""
Batch classification API endpoints.
"""
import logging
from typing import Optional

from fastapi import APIRouter, File, Form, HTTPException, UploadFile

from app.config import get_settings
from app.models.canonical import Method, SymmetryPolicy
from app.models.errors import InvariantViolation, NpnError
from app.models.requests import ClassifyResponse, ClassRow
from app.services.classifier import Classifier
from app.services.function_io import read_functions
from app.services.truth_table import to_hex

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/classify", tags=["classify"])
settings = get_settings()


@router.post("", response_model=ClassifyResponse)
def classify_functions(
    file: UploadFile = File(..., description="Truth-table text, one table per line"),
    method: Optional[Method] = Form(None),
    symmetry_policy: Optional[SymmetryPolicy] = Form(None),
    inputs: Optional[int] = Form(None, ge=0, le=16),
):
    """
    Bucket an uploaded truth-table file into NPN classes.

    Rows are sorted by input count, then canonical table.
    """
    try:
        text = file.file.read().decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="Upload is not UTF-8 text")

    try:
        records, errors = read_functions(text.splitlines(), inputs)
        classifier = Classifier.from_settings(
            settings, method=method, policy=symmetry_policy, jobs=1
        )
        classes, stats, item_errors = classifier.classify(
            [f for _, f in records], [line for line, _ in records]
        )
        stats.error_count += len(errors)

        rows = []
        for entry in classes.sorted_entries():
            out_neg, phase, perm = entry.witness.to_fields()
            rows.append(ClassRow(
                canonical_hex=to_hex(entry.canonical),
                count=entry.count,
                representative_hex=to_hex(entry.representative),
                out_neg=out_neg,
                phase_mask_hex=phase,
                perm=perm,
            ))
        return ClassifyResponse(
            classes=rows,
            stats=stats,
            errors=sorted(errors + item_errors, key=lambda e: e.line or 0),
        )

    except InvariantViolation as e:
        logger.error(f"Invariant violated during classification: {e}")
        raise HTTPException(status_code=500, detail=f"Failed to classify: {str(e)}")
    except NpnError as e:
        raise HTTPException(status_code=400, detail=str(e))
