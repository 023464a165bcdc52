import json
import os

import jsonschema
import pytest

from asymih.corpus import rendered_files
from asymih.models import data_dir

SCHEMAS = os.path.join(os.path.dirname(__file__), "..", "docs", "schemas")
FILES = rendered_files()


@pytest.mark.parametrize("rel", sorted(FILES))
def test_shipped_data_matches_generator(rel):
    with open(os.path.join(data_dir(), rel)) as fh:
        assert fh.read() == FILES[rel]


@pytest.mark.parametrize("rel", sorted(FILES))
def test_shipped_data_validates(rel):
    name = "catalog.schema.json" if rel == "catalog.json" else "complex.schema.json"
    schema = json.load(open(os.path.join(SCHEMAS, name)))
    jsonschema.validate(json.loads(FILES[rel]), schema)
