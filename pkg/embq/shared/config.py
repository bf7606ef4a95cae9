import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


class Settings:
    """Resource caps and defaults, overridable through ``EMBQ_*`` variables."""

    CAP_SIZE: int = _int_env("EMBQ_CAP_SIZE", 12)
    CAP_CANONICAL: int = _int_env("EMBQ_CAP_CANONICAL", 10)
    CAP_ENUMERATION: int = _int_env("EMBQ_CAP_ENUMERATION", 1_000_000)
    CAP_ROUNDS: int = _int_env("EMBQ_CAP_ROUNDS", 4)
    SEED: int = _int_env("EMBQ_SEED", 42)
    JOBS: int = _int_env("EMBQ_JOBS", 1)
    LOG_LEVEL: str = os.getenv("EMBQ_LOG_LEVEL", "WARNING")

    @property
    def caps(self) -> dict:
        return {
            "size": self.CAP_SIZE,
            "canonical": self.CAP_CANONICAL,
            "enumeration": self.CAP_ENUMERATION,
            "rounds": self.CAP_ROUNDS,
        }


settings = Settings()
