"""
Web API のテスト
"""
import pytest

from logic_workbench.app import app


@pytest.fixture
def client():
    app.config["TESTING"] = True
    with app.test_client() as client:
        yield client


class TestReadEndpoints:
    """GET のエンドポイントのテスト"""

    def test_health(self, client):
        """死活監視"""
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.get_json() == {"status": "ok"}

    def test_fixtures(self, client):
        """フィクスチャの一覧"""
        names = [fx["name"] for fx in client.get("/api/fixtures").get_json()["fixtures"]]
        assert "allind_a" in names
        assert "boolean2" in names

    def test_fixture_axioms(self, client):
        """フィクスチャの公理の表"""
        data = client.get("/api/fixtures/allind_a/axioms").get_json()
        assert data["axioms"]["DiamondNeg"]["chain"] == "◇¬b = ◇a = 1 ≰ a = ¬b = ¬□b"
        assert data["axioms"]["BoxNeg"]["holds"] is True

    def test_unknown_fixture(self, client):
        """未知のフィクスチャは 400"""
        response = client.get("/api/fixtures/missing/axioms")
        assert response.status_code == 400
        assert response.get_json()["type"] == "ModelError"

    def test_not_found(self, client):
        """未定義のパスは JSON の 404"""
        response = client.get("/api/unknown")
        assert response.status_code == 404
        assert "error" in response.get_json()


class TestDecideEndpoint:
    """/api/decide のテスト"""

    def test_proved(self, client):
        """証明を返す"""
        data = client.post("/api/decide", json={"goal": "p |- ~~p"}).get_json()
        assert data["status"] == "proved"
        assert data["trace"] == ["6: p |- ~~p FROM"]
        assert data["goal"]["logic"] == "fundamental"

    def test_refuted_with_budgets(self, client):
        """予算を指定して反例を返す"""
        body = {"goal": "~~p |- p", "budgets": {"max_universe": 32, "max_steps": 5000, "max_states": 2}}
        data = client.post("/api/decide", json=body).get_json()
        assert data["status"] == "refuted"
        assert data["model"]["witness"] in data["model"]["frame"]["states"]

    def test_modal(self, client):
        """様相論理の帰結"""
        body = {"goal": "<>~p |- ~[]p", "logic": "fundamental-modal"}
        assert client.post("/api/decide", json=body).get_json()["status"] == "proved"

    def test_syntax_error(self, client):
        """構文エラーは 400"""
        response = client.post("/api/decide", json={"goal": "p &"})
        assert response.status_code == 400
        assert response.get_json()["type"] == "FormulaSyntaxError"

    def test_unknown_logic(self, client):
        """未知の論理は 400"""
        response = client.post("/api/decide", json={"goal": "p |- p", "logic": "linear"})
        assert response.status_code == 400

    def test_invalid_budget(self, client):
        """予算が 0 なら 400"""
        response = client.post("/api/decide", json={"goal": "p |- p", "budgets": {"max_steps": 0}})
        assert response.status_code == 400
        assert response.get_json()["type"] == "ValueError"

    def test_non_object_body(self, client):
        """JSON オブジェクトでなければ 400"""
        response = client.post("/api/decide", json=["p |- p"])
        assert response.status_code == 400


class TestOtherEndpoints:
    """translate, represent, frame-check のテスト"""

    def test_translate(self, client):
        """式と帰結の翻訳"""
        assert client.post("/api/translate", json={"formula": "p | q"}).get_json() == {
            "translation": "~(~~~p & ~~~q)"
        }
        assert client.post("/api/translate", json={"goal": "~~p |- p"}).get_json() == {
            "translation": "~~~~p |- ~~p"
        }

    def test_represent_fixture(self, client):
        """フィクスチャの表現"""
        data = client.post("/api/represent", json={"fixture": "boolean2"}).get_json()
        assert data["morphism"]["isomorphism"] is True
        assert len(data["frame"]["states"]) == 3

    def test_represent_lattice(self, client):
        """束 JSON の表現"""
        lattice = {"elements": ["0", "a", "1"], "leq": [[0, 1], [1, 2]], "neg": [2, 0, 0], "box": [0, 0, 2],
                   "dia": [0, 2, 2]}
        data = client.post("/api/represent", json={"lattice": lattice, "flavor": "filter-ideal"}).get_json()
        assert data["flavor"] == "filter-ideal"
        assert data["morphism"]["isomorphism"] is True

    def test_represent_precondition(self, client):
        """前提を満たさなければ 400"""
        response = client.post("/api/represent", json={"fixture": "allind_a", "flavor": "unified"})
        assert response.status_code == 400
        assert response.get_json()["type"] == "PreconditionError"

    def test_represent_requires_source(self, client):
        """fixture も lattice もなければ 400"""
        assert client.post("/api/represent", json={}).status_code == 400

    def test_frame_check(self, client):
        """指定した条件だけを検査する"""
        frame = {"states": ["s0", "s1"], "open": [[0, 0], [1, 1], [0, 1]]}
        data = client.post("/api/frame-check", json={"frame": frame, "conditions": ["symmetric"]}).get_json()
        assert data["conditions"]["symmetric"]["holds"] is False
        assert data["fixpoints"] == 3

    def test_frame_check_unknown_condition(self, client):
        """未知の条件名は 400"""
        frame = {"states": ["s0"]}
        response = client.post("/api/frame-check", json={"frame": frame, "conditions": ["transitive"]})
        assert response.status_code == 400
