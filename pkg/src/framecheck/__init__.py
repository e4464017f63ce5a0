from framecheck.core.config import get_settings

__all__ = ["get_settings"]
