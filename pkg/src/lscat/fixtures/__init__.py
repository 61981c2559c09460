"""Small example objects shipped as JSON documents."""

from importlib import resources

NAMES = (
    "asymmetric_cat",
    "boundary_triangle",
    "cat_one_gcat_two",
    "circle_poset",
    "core_raises_gcat",
    "core_raises_gcat_core",
    "punctured_octahedron",
)


def text(name: str) -> str:
    return resources.files(__name__).joinpath(name + ".json").read_text(encoding="utf-8")


def load(name: str):
    """The built complex or poset of a fixture."""
    from ..documents import parse_input

    return parse_input(text(name)).obj


def path(name: str) -> str:
    return str(resources.files(__name__).joinpath(name + ".json"))
