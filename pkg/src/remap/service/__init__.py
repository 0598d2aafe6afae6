from .app import create_app
from .config import ServiceConfig
from .dispatch import dispatch

__all__ = ["create_app", "ServiceConfig", "dispatch"]
