nums = []
for i in range(3):
    nums.append(int(input()))
best = nums[0]
for v in nums:
    if v > best:
        best = v
print(best)
