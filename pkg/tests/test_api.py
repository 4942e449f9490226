"""
Tests for the compute API endpoints.
"""

from unittest.mock import patch

import pytest
from fastapi.testclient import TestClient

from permstat.config import settings
from permstat.exceptions import BudgetExceededError
from permstat.main import app

# Test client
client = TestClient(app)

PREFIX = settings.API_PREFIX


@pytest.fixture
def worked_example():
    return [7, 8, 6, 5, 2, 9, 4, 1, 3]


class TestComputeAPI:
    """Tests for the compute routes."""

    def test_stats(self, worked_example):
        """Statistics of the worked example at q = 2."""
        response = client.post(f"{PREFIX}/stats", json={"window": worked_example, "q": 2})
        assert response.status_code == 200
        data = response.json()
        assert data["Del_q"] == [3, 4, 5, 7, 8]
        assert data["Des_q"] == [2, 3, 4, 6, 7]
        assert data["inv_q"] == data["ell_q"] == 23

    def test_stats_rejects_non_permutation(self):
        response = client.post(f"{PREFIX}/stats", json={"window": [1, 2, 2], "q": 1})
        assert response.status_code == 400
        assert "not a permutation" in response.json()["detail"]

    def test_stats_rejects_bad_q(self):
        response = client.post(f"{PREFIX}/stats", json={"window": [1, 2], "q": 0})
        assert response.status_code == 422

    def test_decompose(self):
        response = client.post(f"{PREFIX}/decompose", json={"window": [2, 3, 1]})
        assert response.json() == {"group": "s", "degree": 3, "word": "s1 | s2"}
        response = client.post(f"{PREFIX}/decompose", json={"window": [3, 1, 2], "group": "a"})
        assert response.json() == {"group": "a", "degree": 3, "word": "a1^-1"}

    def test_decompose_odd_in_alternating_group(self):
        response = client.post(f"{PREFIX}/decompose", json={"window": [2, 1, 3], "group": "a"})
        assert response.status_code == 400

    def test_numbers(self):
        response = client.get(f"{PREFIX}/numbers/bellq", params={"n": 3, "q": 2})
        assert response.status_code == 200
        assert response.json()["value"] == "22"

    def test_numbers_unknown_kind(self):
        response = client.get(f"{PREFIX}/numbers/catalan", params={"n": 3})
        assert response.status_code == 400

    def test_verify(self):
        response = client.post(f"{PREFIX}/verify", json={"theorem": "qmac", "n": 2, "q": 2})
        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "pass"
        assert data["lhs"] == "2 + 4*t1"

    def test_verify_unknown_theorem(self):
        response = client.post(f"{PREFIX}/verify", json={"theorem": "riemann", "n": 2})
        assert response.status_code == 400

    def test_verify_budget_refusal(self):
        with patch("permstat.routes.compute.verify", side_effect=BudgetExceededError("S_12 exceeds")):
            response = client.post(f"{PREFIX}/verify", json={"theorem": "qmac", "n": 11, "q": 2})
        assert response.status_code == 422

    def test_distribution(self):
        response = client.post(
            f"{PREFIX}/distribution", json={"m": 3, "q": 2, "stats": ["inv_q", "del_q"]}
        )
        assert response.status_code == 200
        data = response.json()
        assert data["text"] == "2 + 4*t1*t2"
        assert data["terms"] == [{"exp": [0, 0], "coef": "2"}, {"exp": [1, 1], "coef": "4"}]

    def test_distribution_with_filter(self):
        response = client.post(
            f"{PREFIX}/distribution", json={"m": 4, "q": 1, "stats": ["ell_A"], "filter": "even"}
        )
        assert response.status_code == 200
        assert sum(int(t["coef"]) for t in response.json()["terms"]) == 12

    def test_distribution_over_budget(self):
        response = client.post(f"{PREFIX}/distribution", json={"m": 40, "q": 1, "stats": ["inv_q"]})
        assert response.status_code == 422


class TestServiceEndpoints:
    """Root and health endpoints."""

    def test_root(self):
        response = client.get("/")
        assert response.status_code == 200
        assert response.json()["docs"] == "/docs"

    def test_health(self):
        response = client.get("/health")
        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"
        assert data["enumeration_budget"] == settings.effective_budget()
