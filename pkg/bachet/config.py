from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    """Значения по умолчанию; все переопределяются флагами командной строки"""
    enumeration_bound: int = 50_000
    sample_budget: int = 200
    default_seed: int = 0
    all_a_bound: int = 200
    log_level: str = "WARNING"
    log_format: str = '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'
    error_log_format: str = '%(asctime)s - %(levelname)s - %(message)s'


# Единый экземпляр для всего приложения
settings = Settings()
