"""HTTP verification service: one POST endpoint per command.

Run with:  uvicorn torsionkit.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .errors import FormatError, SizeLimitError
from .handlers import (
    handle_check_band,
    handle_check_epiclass,
    handle_check_morphism,
    handle_check_pretorsion,
    handle_check_pseudoalgebra,
    handle_check_rectangular,
    handle_characterize,
    handle_decompose_band,
    handle_enumerate_bands,
    handle_product,
    handle_roundtrip,
    handle_validate,
)
from .schemas import (
    BandRequest,
    CheckMorphismRequest,
    EnumerateBandsRequest,
    EpiclassRequest,
    PretorsionRequest,
    ProductRequest,
    Report,
    ValidateRequest,
)

app = FastAPI(
    title="torsionkit",
    version=__version__,
    description="Exhaustive verification of torsion pairs, rectangularity, "
    "square-monad pseudo-algebras and band decompositions on finite categories.",
)


def _run(handler, request) -> Report:
    try:
        return handler(request)
    except (FormatError, SizeLimitError) as e:
        raise HTTPException(status_code=400, detail=e.as_dict()) from e


@app.post("/validate", response_model=Report)
def validate(request: ValidateRequest) -> Report:
    return _run(handle_validate, request)


@app.post("/product", response_model=Report)
def product(request: ProductRequest) -> Report:
    return _run(handle_product, request)


@app.post("/check-pretorsion", response_model=Report)
def check_pretorsion(request: PretorsionRequest) -> Report:
    return _run(handle_check_pretorsion, request)


@app.post("/check-rectangular", response_model=Report)
def check_rectangular(request: PretorsionRequest) -> Report:
    return _run(handle_check_rectangular, request)


@app.post("/characterize", response_model=Report)
def characterize(request: PretorsionRequest) -> Report:
    return _run(handle_characterize, request)


@app.post("/check-morphism", response_model=Report)
def check_morphism(request: CheckMorphismRequest) -> Report:
    return _run(handle_check_morphism, request)


@app.post("/check-pseudoalgebra", response_model=Report)
def check_pseudoalgebra(request: PretorsionRequest) -> Report:
    return _run(handle_check_pseudoalgebra, request)


@app.post("/roundtrip", response_model=Report)
def roundtrip(request: PretorsionRequest) -> Report:
    return _run(handle_roundtrip, request)


@app.post("/check-band", response_model=Report)
def check_band(request: BandRequest) -> Report:
    return _run(handle_check_band, request)


@app.post("/decompose-band", response_model=Report)
def decompose_band(request: BandRequest) -> Report:
    return _run(handle_decompose_band, request)


@app.post("/enumerate-bands", response_model=Report)
def enumerate_bands(request: EnumerateBandsRequest) -> Report:
    return _run(handle_enumerate_bands, request)


@app.post("/check-epiclass", response_model=Report)
def check_epiclass(request: EpiclassRequest) -> Report:
    return _run(handle_check_epiclass, request)
