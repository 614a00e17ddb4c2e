from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="STRUCTREE_", env_file=".env", extra="ignore", env_file_encoding="utf-8"
    )

    # ----------------------------------- Search budgets ------------------------------------------------

    NODE_BUDGET: int = Field(
        default=10_000_000,
        description="Maximum number of search nodes visited by one tight-cut enumeration.",
    )
    GROUP_BUDGET: int = Field(
        default=100_000,
        description="Maximum size of an orbit or group closure built from generators.",
    )
    AUTOMORPHISM_BUDGET: int = Field(
        default=200_000,
        description="Maximum number of automorphisms enumerated by brute force.",
    )

    # --- Cut search ---
    DEFAULT_K: int = Field(default=2, description="Default maximal edge-boundary size |δe|.")
    BRUTE_FORCE_LIMIT: int = Field(
        default=16, description="Largest vertex count for exhaustive subset enumeration."
    )

    # --- Trend tests ---
    TREND_MIN_RADII: int = Field(
        default=3, description="Number of trailing radii inspected by growth-trend verdicts."
    )
    TREND_STEP: int = Field(default=1, description="Minimal growth per radius step for a trend.")
    SHADOW_MARGIN: int = Field(
        default=1,
        description="Truncation radius minus the largest ball radius used for end shadows.",
    )

    # --- Exhaustive metric checks ---
    PAIR_SAMPLE_LIMIT: int = Field(
        default=200, description="Number of source vertices used by all-pairs metric checks."
    )

    # --- Logging ---
    LOG_DIR: str = "logs"
    LOG_LEVEL: str = "INFO"


settings = Settings()

if __name__ == '__main__':
    pass
