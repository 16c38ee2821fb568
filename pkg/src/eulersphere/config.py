from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="EULERSPHERE_", env_file=".env", extra="ignore")

    log_level: str = "WARNING"

    automorphism_cap: int = 60
    recognition_budget: int = 10_000_000

    chromatic_vertex_cap: int = 150
    chromatic_node_budget: int = 2_000_000
    # accept "not Eulerian => not (d+1)-colorable" as a lower bound for spheres
    chromatic_theorem_bound: bool = True

    rank_check_prime: int = 2_147_483_647

    svg_size: int = 640
    svg_layout_iterations: int = 200

    scan_default_trials: int = 10


settings = Settings()
