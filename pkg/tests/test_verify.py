import copy
import json
import random

import pytest

from lscat import build_complex, build_poset, cat, core_complex, core_poset, gcat, gscat, scat
from lscat.documents import certificate_document, object_document, result_document
from lscat.errors import VerificationError
from lscat.fixtures import load
from lscat.verify import verify_core, verify_result

from .oracles import random_complex, random_poset

BOUNDARY = [["a", "b"], ["b", "c"], ["a", "c"]]


def core_doc(obj, seed=None):
    rng = random.Random(seed) if seed is not None else None
    core, trace = core_complex(obj, rng) if hasattr(obj, "facets") else core_poset(obj, rng)
    return {"object": object_document(obj), "core": object_document(core), "trace": certificate_document(trace)}


def roundtrip(doc):
    return json.loads(json.dumps(doc))


def test_fixture_results_verify():
    for fn, name in [(scat, "punctured_octahedron"), (gscat, "punctured_octahedron"), (cat, "asymmetric_cat"), (cat, "cat_one_gcat_two"),
                     (gcat, "cat_one_gcat_two"), (gcat, "core_raises_gcat"), (gcat, "core_raises_gcat_core")]:
        assert verify_result(roundtrip(result_document(fn(load(name)))))
    assert verify_result(roundtrip(result_document(gscat(load("punctured_octahedron"), "exhaustive"))))


def test_random_results_verify():
    rng = random.Random(60)
    for _ in range(30):
        K = random_complex(rng, 6)
        for r in (scat(K), gscat(K)):
            verify_result(roundtrip(result_document(r)))
        X = random_poset(rng, 7)
        for r in (cat(X), gcat(X)):
            verify_result(roundtrip(result_document(r)))


def test_cores_verify_for_any_seed():
    rng = random.Random(61)
    for _ in range(20):
        verify_core(roundtrip(core_doc(random_complex(rng, 7), rng.randrange(100))))
        verify_core(roundtrip(core_doc(random_poset(rng, 8), rng.randrange(100))))


@pytest.fixture
def scat_doc():
    return roundtrip(result_document(scat(build_complex(BOUNDARY))))


@pytest.fixture
def cat_doc():
    X = build_poset(list("cdab"), [("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")])
    return roundtrip(result_document(cat(X)))


def rejects(doc):
    with pytest.raises(VerificationError):
        verify_result(doc)


def test_tampered_scat_reports_fail(scat_doc):
    bad = copy.deepcopy(scat_doc)
    bad["witness"].pop()
    bad["certificates"].pop()
    bad["upper"] = bad["lower"] = bad["value"] = 0
    rejects(bad)
    bad = copy.deepcopy(scat_doc)
    bad["exact"] = False
    rejects(bad)
    bad = copy.deepcopy(scat_doc)
    chain = bad["certificates"][0]["chain"]
    chain[-1] = chain[0]
    rejects(bad)
    bad = copy.deepcopy(scat_doc)
    bad["witness"][0] = {"facets": [["a", "b", "c"]]}
    rejects(bad)
    bad = copy.deepcopy(scat_doc)
    bad["certificates"][0] = {"kind": "fence", "chain": bad["certificates"][0]["chain"]}
    rejects(bad)


def test_skipping_a_contiguity_step_fails():
    K = build_complex([["a", "b"], ["b", "c"], ["c", "d"], ["d", "e"], ["e", "a"]])
    doc = roundtrip(result_document(scat(K)))
    for k, cert in enumerate(doc["certificates"]):
        if len(cert["chain"]) > 2:
            bad = copy.deepcopy(doc)
            del bad["certificates"][k]["chain"][1:-1]
            rejects(bad)
            return
    pytest.skip("no chain long enough to shorten")


def test_tampered_cat_reports_fail(cat_doc):
    bad = copy.deepcopy(cat_doc)
    bad["witness"][0]["points"] = bad["witness"][0]["maximal"]
    rejects(bad)
    bad = copy.deepcopy(cat_doc)
    bad["witness"][0]["maximal"] = ["c"]
    rejects(bad)
    bad = copy.deepcopy(cat_doc)
    bad["certificates"][0]["chain"] = bad["certificates"][0]["chain"][:1]
    rejects(bad)
    bad = copy.deepcopy(cat_doc)
    bad["invariant"] = "scat"
    rejects(bad)


def test_tampered_collapse_traces_fail():
    doc = roundtrip(result_document(gcat(load("cat_one_gcat_two"))))
    k = next(i for i, c in enumerate(doc["certificates"]) if c["steps"])
    bad = copy.deepcopy(doc)
    bad["certificates"][k]["steps"].reverse()
    bad["certificates"][k]["steps"] = [[s[1], s[0]] + s[2:] for s in bad["certificates"][k]["steps"]]
    rejects(bad)
    bad = copy.deepcopy(doc)
    bad["certificates"][k]["steps"].pop()
    rejects(bad)

    cd = roundtrip(core_doc(load("core_raises_gcat")))
    bad = copy.deepcopy(cd)
    bad["trace"]["steps"].pop()
    with pytest.raises(VerificationError):
        verify_core(bad)
    bad = copy.deepcopy(cd)
    bad["core"] = object_document(load("core_raises_gcat"))
    with pytest.raises(VerificationError):
        verify_core(bad)

    kd = roundtrip(core_doc(build_complex([["a", "b", "c"], ["c", "d"]])))
    bad = copy.deepcopy(kd)
    bad["trace"]["steps"][0] = [bad["trace"]["steps"][0][1], bad["trace"]["steps"][0][0]]
    with pytest.raises(VerificationError):
        verify_core(bad)
