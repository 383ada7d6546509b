"""High-precision reference values, computed once with mpmath at 30 digits.

    h(x)    = -x log2 x - (1-x) log2(1-x)
    g(k, N) = h((1 + sqrt(1 - 4(k-1)/N^2)) / 2)

W_N vector entries are (N-k+1)(g(k,N) - g(k-1,N)) with g(1,N) = 0.
"""

H_TWO_THIRDS = 0.918295834054489514787  # h(2/3) = h(1/3) = g(3, 3)
G_2_3 = 0.550047759582757441
G_3_4 = 0.600876036692856100842

W3 = [1.100095519165514882, 0.368248074471732074]
W3_TOTAL = 1.468343593637246956
W4 = [1.06373670799580965, 0.49259426805517243, 0.21040208776627676]
W4_TOTAL = 1.766733063817258849
W5 = [1.00089964644428214, 0.53545547998755869, 0.30814612538667377, 0.13914496058710203]
W5_TOTAL = 1.983646212405616631
W6 = [0.93649299284386225, 0.54531766910135049, 0.35598572870814388,
      0.21551566833853215, 0.09997466206559678]
W6_TOTAL = 2.153286721057485558

# W_3 x GHZ_3 under the strict exclusion rule
W3_GHZ3_E3 = 1.368248074471732
W3_GHZ3_TOTAL = 2.468343593637247

# E^3 of W_7; with W4[1], W5[1], W6[1] this shows E^3(N) peaks at N = 6
W7_E3 = 0.5404782043978203
