"""
Pydantic schemas for knots, curve points, representations and certificates
"""
from app.schemas.knot import *
from app.schemas.curve import *
from app.schemas.representation import *
from app.schemas.certificate import *
from app.schemas.cli import *
