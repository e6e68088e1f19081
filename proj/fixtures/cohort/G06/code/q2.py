a = input()
# TODO finish the comparison
