# Partite Turan Density Toolkit - weighted multipartite hypergraphs, clique densities and extremal constructions
