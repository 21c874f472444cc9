"""HTTP serving of the classifier wire protocol.

POST /classify with {"texts": [...]} returns {"scores": [[10 floats], ...]}
in request order. Malformed bodies get 400 with a JSON error body;
batches over 512 texts get 413.
"""

from __future__ import annotations

from pathlib import Path

import torch
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .labels import NUM_LABELS
from .model import SentimentClassifier, load_checkpoint

MAX_BATCH = 512


class Predictor:
    """Sigmoid scores for texts; one text per forward pass.

    Per-text inference with fixed-length padding makes each score row a
    pure function of its text, independent of how callers chunk requests.
    """

    def __init__(self, model: SentimentClassifier, tokenizer, max_length: int):
        self.model = model.eval()
        self.tokenizer = tokenizer
        self.max_length = max_length

    def predict(self, texts: list[str]) -> list[list[float]]:
        rows = []
        with torch.no_grad():
            for text in texts:
                encoded = self.tokenizer([text], padding="max_length", truncation=True,
                                         max_length=self.max_length, return_tensors="pt")
                logits = self.model(input_ids=encoded["input_ids"],
                                    attention_mask=encoded["attention_mask"])
                rows.append([float(v) for v in torch.sigmoid(logits)[0]])
        assert all(len(row) == NUM_LABELS for row in rows)
        return rows


def create_app(predictor: Predictor) -> FastAPI:
    app = FastAPI()

    @app.post("/classify")
    async def classify(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse({"error": "request body is not valid JSON"}, status_code=400)
        texts = payload.get("texts") if isinstance(payload, dict) else None
        if not isinstance(texts, list) or not all(isinstance(t, str) for t in texts):
            return JSONResponse(
                {"error": 'body must be {"texts": [<string>, ...]}'}, status_code=400)
        if len(texts) > MAX_BATCH:
            return JSONResponse(
                {"error": f"batch of {len(texts)} exceeds the {MAX_BATCH}-text limit"},
                status_code=413)
        return {"scores": predictor.predict(texts)}

    return app


def app_from_checkpoint(model_dir: Path) -> FastAPI:
    model, tokenizer, max_length = load_checkpoint(model_dir)
    return create_app(Predictor(model, tokenizer, max_length))


def serve(model_dir: Path, host: str, port: int) -> None:
    import uvicorn

    uvicorn.run(app_from_checkpoint(model_dir), host=host, port=port)
