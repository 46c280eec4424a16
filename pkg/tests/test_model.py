import math

import pytest

from rabigvm import BasisLabel, Branch, DomainError, ModelParams, validate


def test_valid_params_pass_through():
    p = ModelParams(1.0, 1.0, 0.2)
    assert validate(p) is p


def test_degenerate_but_legal():
    validate(ModelParams(1.0, 0.0, 0.0))


@pytest.mark.parametrize(
    "params, message",
    [
        (ModelParams(0.0, 1.0, 0.2), "omega must be positive"),
        (ModelParams(-1.0, 1.0, 0.2), "omega must be positive"),
        (ModelParams(1.0, -0.1, 0.2), "atom_freq"),
        (ModelParams(1.0, 1.0, -0.2), "coupling"),
        (ModelParams(1.0, math.nan, 0.2), "finite"),
        (ModelParams(1.0, 1.0, math.inf), "finite"),
    ],
)
def test_invalid_params(params, message):
    with pytest.raises(DomainError, match=message):
        validate(params)


def test_basis_label():
    lab = BasisLabel(Branch.PLUS, 3)
    assert str(lab) == "|+,3>"
    assert lab.branch.sign == 1 and Branch.MINUS.sign == -1
    assert lab.branch.flipped is Branch.MINUS
    with pytest.raises(DomainError):
        BasisLabel(Branch.MINUS, -1)


def test_scaled():
    assert ModelParams(1.0, 2.0, 0.5).scaled(2.0) == ModelParams(2.0, 4.0, 1.0)
