def get_nightday_logger():
    import logging

    return logging.getLogger("nightday")
