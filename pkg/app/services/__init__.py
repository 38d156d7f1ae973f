# Stateless services over immutable PartiteHypergraph values
