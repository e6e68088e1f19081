def largest(values):
    best = values[0]
    for v in values:
        if v > best:
            best = v
    return best

nums = [int(input()) for _ in range(3)]
print(largest(nums))
