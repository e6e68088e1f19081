values = eval(input())
total = sum(values)
print(total)
