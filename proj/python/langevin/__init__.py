"""Python front end to the Langevin sampling core."""

import json

from . import _core

builtin_potentials = _core.builtin_potentials
mollifier_sample = _core.mollifier_sample
mollifier_density = _core.mollifier_density
plan = _core.plan
w2_exact = _core.w2_exact
w2_1d = _core.w2_1d
suite_names = _core.suite_names


def run(config, threads=1):
    """Run every replica of an experiment config (a dict in the JSON schema)."""
    return _core.run_config(json.dumps(config), threads)


def config_hash(config):
    return _core.config_hash(json.dumps(config))


def verify(name, seed=1):
    return json.loads(_core.verify_suite(name, seed))
