"""Which compact simple Lie groups of rank <= 15 pass the degree criterion."""
from precsymp.lie_groups import all_types, classify, rational_type

for g in all_types(15):
    res = classify(g)
    if res.holds or g.rank <= 4:
        print(f"{str(g):>4} {str(tuple(rational_type(g))):<40} {'yes' if res.holds else 'no'}")
