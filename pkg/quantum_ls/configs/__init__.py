from quantum_ls.configs.system_config import get_config, ensure_directories

__all__ = ["get_config", "ensure_directories"]
