"""REST service for expert review, versioned under /v1.

Routes: list/filter items with keyset pagination, fetch one item with
its document and highlight spans, submit verify/modify/reject actions,
export the validated dataset, and serve the field schemas that drive
the UI's form generation. Auth is a single shared bearer token from
EVISYNTH_REVIEW_TOKEN; unset means open (desk-scale internal tool).
Static UI assets are served from the configured directory when built.
"""

from __future__ import annotations

import os
from dataclasses import asdict
from pathlib import Path

from fastapi import Depends, FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..extraction import catalog
from .highlights import locate_spans
from .store import ReviewError, ReviewStore, ValidationFailed


class ReviewRequest(BaseModel):
    action: str
    edits: dict | None = None
    reviewer: str = ""


def _item_summary(item, counts: dict) -> dict:
    article = counts.get(item.article_id, {})
    return {
        "item_id": item.item_id,
        "article_id": item.article_id,
        "pathogen": item.pathogen,
        "data_type": item.data_type,
        "status": item.status,
        "reviewer": item.reviewer,
        "reviewed_at": item.reviewed_at,
        "article_counts": {
            "parameter": article.get("parameter", 0),
            "model": article.get("model", 0),
            "outbreak": article.get("outbreak", 0),
            "pending": article.get("pending", 0),
        },
    }


def create_app(store: ReviewStore, *, static_dir: str | Path | None = None,
               token: str | None = None) -> FastAPI:
    app = FastAPI(title="evisynth review service", version="1")
    token = token if token is not None else os.environ.get(
        "EVISYNTH_REVIEW_TOKEN")

    async def require_token(request: Request):
        if not token:
            return
        supplied = request.headers.get("authorization", "")
        if supplied != f"Bearer {token}":
            raise HTTPException(status_code=401, detail="invalid token")

    @app.get("/v1/items", dependencies=[Depends(require_token)])
    def list_items(pathogen: str | None = None, status: str | None = None,
                   data_type: str | None = None, after: str | None = None,
                   limit: int = Query(default=50, le=500)):
        items = store.list_items(pathogen=pathogen, status=status,
                                 data_type=data_type, after=after,
                                 limit=limit)
        counts = store.article_counts(pathogen)
        return {
            "items": [_item_summary(i, counts) for i in items],
            "next_after": items[-1].item_id if len(items) == limit else None,
        }

    @app.get("/v1/items/{item_id}", dependencies=[Depends(require_token)])
    def get_item(item_id: str):
        item = store.get_item(item_id)
        if item is None:
            raise HTTPException(status_code=404,
                                detail=f"unknown item {item_id}")
        document = store.get_document(item.article_id) or ""
        spans, flagged = locate_spans(store.provenance_trace(item), document)
        return {
            "item": asdict(item),
            "document_markdown": document,
            "highlights": [asdict(s) for s in spans],
            "unlocated_fields": flagged,
        }

    @app.post("/v1/items/{item_id}/review",
              dependencies=[Depends(require_token)])
    def submit_review(item_id: str, body: ReviewRequest):
        try:
            item = store.submit_review(item_id, body.action, body.edits,
                                       body.reviewer)
        except KeyError:
            raise HTTPException(status_code=404,
                                detail=f"unknown item {item_id}")
        except ValidationFailed as exc:
            return JSONResponse(status_code=422,
                                content={"errors": exc.errors})
        except ReviewError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"item": asdict(item)}

    @app.get("/v1/export/{pathogen}", dependencies=[Depends(require_token)])
    def export_validated(pathogen: str):
        from ..extraction.records import record_from_json, record_to_json
        from .store import apply_edits

        rows = []
        for item in store.list_items(pathogen=pathogen, limit=1_000_000):
            if item.status in ("Verified", "Revised"):
                rows.append(record_to_json(
                    record_from_json(apply_edits(item))))
        return {"pathogen": pathogen, "records": rows}

    @app.get("/v1/audit", dependencies=[Depends(require_token)])
    def audit_log():
        return {"entries": store.audit_log()}

    @app.get("/v1/schemas/{data_type}", dependencies=[Depends(require_token)])
    def get_schema(data_type: str):
        if data_type == "model":
            schema = catalog.MODEL_SCHEMA
        elif data_type == "outbreak":
            schema = catalog.OUTBREAK_SCHEMA
        elif data_type == "population":
            schema = catalog.POPULATION_SCHEMA
        elif data_type in catalog.PARAMETER_VALUE_SCHEMAS:
            schema = catalog.PARAMETER_VALUE_SCHEMAS[data_type]
        else:
            raise HTTPException(status_code=404,
                                detail=f"unknown data type {data_type}")
        return {"data_type": data_type, "fields": [
            {"name": f.name, "kind": f.kind, "description": f.description,
             "allowed_values": list(f.allowed_values or []),
             "required": f.required, "nullable": f.nullable,
             "minimum": f.minimum, "maximum": f.maximum}
            for f in schema]}

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="ui")
    return app
