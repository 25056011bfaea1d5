import pytest

import pseudocalc as pc


@pytest.fixture(scope="session")
def identity_ctx() -> pc.PseudoContext:
    return pc.context_from_source("identity")


@pytest.fixture(scope="session")
def power2_ctx() -> pc.PseudoContext:
    return pc.context_from_source("power:2")


@pytest.fixture(scope="session")
def neglog_ctx() -> pc.PseudoContext:
    return pc.context_from_source("neglog")


@pytest.fixture(scope="session")
def all_ctxs(identity_ctx, power2_ctx, neglog_ctx):
    return (identity_ctx, power2_ctx, neglog_ctx)
