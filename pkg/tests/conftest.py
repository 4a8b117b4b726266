"""Shared spaces and document helpers for the test suite."""

import json

import pytest

from maxitive import build_space


@pytest.fixture
def abc():
    return build_space("abc", [["a"], ["b"], ["c"]])


@pytest.fixture
def abcd():
    return build_space("abcd", [["a"], ["b"], ["c"], ["d"]])


def write_doc(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def measure_doc(kind, labels, values, blocks=None):
    blocks = blocks or [[l] for l in labels]
    return {
        "schema": "1",
        "kind": kind,
        "space": {"ground": list(labels), "blocks": blocks},
        "atoms": {lab: v for lab, v in zip(labels, values)},
    }
