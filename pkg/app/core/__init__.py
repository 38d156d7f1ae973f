# Core configuration, errors, logging and cache infrastructure
