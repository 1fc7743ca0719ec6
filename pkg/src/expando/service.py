"""HTTP service exposing expansion and lexicon lookup to the word board.

Resources load once at startup and are immutable afterwards, so request
handling is stateless and identical requests get identical responses.
"""

from __future__ import annotations

from dataclasses import asdict
from enum import Enum
from typing import Mapping

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .lexicon import Category, LexEntry, Lexicon
from .prepmodel import PrepModel
from .realiser import expand

DEFAULT_TOP_K = 5
MAX_TOP_K = 50
MAX_WORDS = 20


def _entry_summary(entry: LexEntry) -> dict:
    raw = asdict(entry)
    out: dict = {}
    for key, value in raw.items():
        if value in (None, (), frozenset()):
            continue
        if isinstance(value, Enum):
            value = value.value
        if key == "preps":
            value = {tag.value: prep for tag, prep in entry.preps}
        if key == "sources":
            value = sorted(value)
        out[key] = value
    return out


def _bad_request(message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=400)


def create_app(
    lex: Lexicon | None = None,
    model: PrepModel | None = None,
    contraction_table: Mapping[str, str] | None = None,
) -> FastAPI:
    if lex is None or model is None or contraction_table is None:
        from .resources import load_contractions, load_seed_lexicon, load_seed_model

        lex = lex or load_seed_lexicon()
        model = model or load_seed_model()
        if contraction_table is None:
            contraction_table = load_contractions()

    app = FastAPI(title="expando", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__, "entries": len(lex)}

    @app.post("/expand")
    async def expand_endpoint(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _bad_request("request body is not valid JSON")
        if not isinstance(body, dict):
            return _bad_request("request body must be a JSON object")
        words = body.get("words")
        if (
            not isinstance(words, list)
            or not words
            or not all(isinstance(w, str) and w.strip() for w in words)
        ):
            return _bad_request("'words' must be a non-empty list of strings")
        if len(words) > MAX_WORDS:
            return _bad_request(f"at most {MAX_WORDS} words per request")
        top_k = body.get("top_k", DEFAULT_TOP_K)
        if not isinstance(top_k, int) or isinstance(top_k, bool) or top_k < 1:
            return _bad_request("'top_k' must be a positive integer")
        top_k = min(top_k, MAX_TOP_K)
        contractions = body.get("contractions", True)
        if not isinstance(contractions, bool):
            return _bad_request("'contractions' must be a boolean")
        result = expand(
            words,
            lex,
            model,
            top_k=top_k,
            contractions=contractions,
            contraction_table=contraction_table,
        )
        return {
            "candidates": [
                {"text": c.text, "score": c.score, "trace": c.trace}
                for c in result.candidates
            ],
            "diagnostics": result.diagnostics,
        }

    @app.get("/lexicon")
    def lexicon_index(category: str | None = None):
        if category is None:
            counts = {}
            for entry in lex.entries:
                counts[entry.category.value] = counts.get(entry.category.value, 0) + 1
            return {"entries": len(lex), "categories": counts}
        try:
            cat = Category(category)
        except ValueError:
            return _bad_request(f"unknown category {category!r}")
        return {"category": cat.value, "lemmas": lex.lemmas(cat)}

    @app.get("/lexicon/{lemma}")
    def lexicon_entry(lemma: str):
        entries = [
            lex.entry(lemma, category)
            for category in Category
            if lex.entry(lemma, category) is not None
        ]
        if not entries:
            return JSONResponse(
                {"error": f"no entry for {lemma!r}"}, status_code=404
            )
        return {
            "lemma": lemma.lower(),
            "entries": [_entry_summary(e) for e in entries],
        }

    return app


def serve(
    port: int,
    host: str = "127.0.0.1",
    lex: Lexicon | None = None,
    model: PrepModel | None = None,
) -> None:
    import uvicorn

    app = create_app(lex=lex, model=model)
    uvicorn.run(app, host=host, port=port, log_level="info")
