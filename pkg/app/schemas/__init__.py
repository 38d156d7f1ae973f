# Pydantic schemas: instance documents, reports and request bodies
