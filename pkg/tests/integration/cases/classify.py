from ..case import Case
from ..file import File

cases = [
    Case(
        name="classify no labels",
        args=["--format", "json", "classify", "--n", "0", "--processes", "1"],
        expected=['"verdict": "aspherical-curvature"', '"bound": "-π"', '"N": 0'],
    ),
    Case(
        name="classify one label",
        args=["classify", "--n", "1", "--processes", "1"],
        expected=["aspherical-weight-test: 0  aspherical-curvature: 8  distribution-needed: 0  exceptional: 0"],
    ),
    Case(
        name="classify one label as json",
        args=["--format", "json", "classify", "-n", "1", "--processes", "1"],
        expected=['"admitted": ["ad"]', '"citation": "Lemma 3(1)"', '"bound": "-π/3"'],
    ),
    Case(
        name="classify from config",
        args=["--config", "asphere.toml", "classify", "--n", "0"],
        expected=['"verdict": "aspherical-curvature"'],
        files=[File("asphere.toml", content=['output_format = "json"', "processes = 1"])],
    ),
    Case(name="classify out of range", args=["classify", "--n", "16"], exit_code=2),
    Case(
        name="classify bad config",
        args=["--config", "asphere.toml", "classify", "--n", "0"],
        exit_code=2,
        files=[File("asphere.toml", content=["max_cycle_len = 1"])],
    ),
    Case(
        name="case relations",
        args=["case", "d=g", "f=i", "h=e"],
        expected=['"verdict": "exceptional"', '"citation": "Theorem(1)"'],
    ),
    Case(
        name="case lemma 1",
        args=["case", "a=d^-1", "a=g^-1"],
        expected=['"verdict": "aspherical-weight-test"', '"citation": "Lemma 1(1)"'],
    ),
    Case(name="case contradiction", args=["case", "a=d^-1", "a=d"], expected=["d^2 = 1"], exit_code=2),
]
