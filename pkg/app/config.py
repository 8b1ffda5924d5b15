from pydantic_settings import BaseSettings

class Settings(BaseSettings):
    RESAMPLE_SEED: int = 42
    DEFAULT_K: int = 5
    TRAIN_FRACTION: float = 0.8
    LEARNING_RATE: float = 0.1
    EPOCHS: int = 1000
    DECISION_THRESHOLD: float = 0.5
    LOG_LEVEL: str = "INFO"
    CACHE_TTL_SECONDS: int = 300
    RATE_LIMIT: str = "30/minute"

    class Config:
        env_file = ".env"

settings = Settings()
