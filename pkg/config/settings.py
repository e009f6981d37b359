from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )
    # Environment
    LSPI_ENV: str = "local"

    # Output
    default_output_dir: str = "./out"

    # Exact solver (Shapley oracle)
    state_space_cap: int = 1_000_000
    shapley_tol: float = 1e-10
    shapley_max_iter: int = 100_000

    # Policy evaluation (fitted-Q inner loop)
    evaluation_tol: float = 1e-8
    evaluation_max_iter: int = 500
    divergence_threshold: float = 1e12

    # Linear algebra
    rank_rtol: float = 1e-10

    # Error bound reports
    default_delta: float = 0.1

    # Sentry
    sentry_dsn: str = ""
    sentry_enabled: bool = True
    sentry_enabled_environments: str = "prod"
    sentry_traces_sample_rate: float = 0.0

    def is_prod(self) -> bool:
        return self.LSPI_ENV.lower() == "prod"

    @property
    def sentry_enabled_environments_list(self) -> list[str]:
        return [
            env.strip().lower()
            for env in self.sentry_enabled_environments.split(",")
            if env.strip()
        ]


# Global settings instance
settings = Settings()
