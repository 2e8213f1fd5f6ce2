from ..case import Case
from .classify import cases as classify_cases
from .parse import cases as parse_cases
from .stargraph import cases as stargraph_cases
from .tables import cases as tables_cases
from .weightcheck import cases as weightcheck_cases

cases: list[Case] = [
    *parse_cases,
    *stargraph_cases,
    *weightcheck_cases,
    *classify_cases,
    *tables_cases,
]
