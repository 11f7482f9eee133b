"""
アプリケーション設定
"""
import logging
import os
from pathlib import Path

from dotenv import load_dotenv

# プロジェクトルート
BASE_DIR = Path(__file__).resolve().parent.parent.parent
load_dotenv(BASE_DIR / ".env")

# Flask設定
SECRET_KEY = os.getenv("SECRET_KEY", "dev-secret-key-change-in-production")
DEBUG = os.getenv("DEBUG", "False").lower() == "true"

# ログ設定
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# 飽和（forward saturation）の予算
MAX_UNIVERSE = int(os.getenv("MAX_UNIVERSE", 256))
MAX_STEPS = int(os.getenv("MAX_STEPS", 200000))

# 反例探索の予算
MAX_STATES = int(os.getenv("MAX_STATES", 4))
MAX_MODAL_STATES = int(os.getenv("MAX_MODAL_STATES", 3))  # 様相フレームは R の組合せが爆発する
MAX_MODELS = int(os.getenv("MAX_MODELS", 200000))

# 不動点代数の計算上限
FIXPOINT_STATE_CAP = int(os.getenv("FIXPOINT_STATE_CAP", 64))
BRUTE_FORCE_STATE_CAP = int(os.getenv("BRUTE_FORCE_STATE_CAP", 14))
EMBEDDING_FAMILY_CAP = int(os.getenv("EMBEDDING_FAMILY_CAP", 10))

# 健全性スポットチェック
SPOT_CHECK_MODELS = int(os.getenv("SPOT_CHECK_MODELS", 50))

# 組み込みフィクスチャ
FIXTURE_FILE = Path(__file__).resolve().parent.parent / "data" / "fixtures.json"


def configure_logging(level: str = None) -> None:
    """
    ルートロガーを設定

    Args:
        level: ログレベル名（省略時は LOG_LEVEL）
    """
    logging.basicConfig(level=(level or LOG_LEVEL), format=LOG_FORMAT)
