"""Precomputed reference values, frozen from 40-digit arithmetic.

The symbol constants and sine-integral values come from series-headed
quadrature of their defining one-dimensional integrals (the head opens
the cancellation-prone part of the integrand analytically; the tail is
adaptive quadrature between arch endpoints).  Circle energies come from
the one-dimensional reduction of the double integral with the same
head-plus-tail treatment; every value was stable to all printed digits
under sweeps of the split point, series order, and working precision.
"""

import numpy as np

# q_k: 4 pi int_0^{k pi} (u^2 - 2 + 2 cos u) u^(-2-alpha) du
Q_K = {
    2.25: {1: 3.0271479818966214, 2: 4.1624755722804806,
           3: 4.5547137621712329, 5: 4.837172268250565,
           10: 5.022536582830302, 50: 5.1395197024092386},
    2.5: {1: 3.4901638022289777, 2: 4.2767759860904329,
          3: 4.5135032065984681, 5: 4.665807862822995,
          10: 4.7523451650858658, 50: 4.7956258897233808},
    2.75: {1: 5.390512802002372, 2: 5.936822588381579,
           3: 6.0798142149470509, 5: 6.1620463034243433,
           10: 6.2025421142620325, 50: 6.2187208634262698},
}

# lambda_k = int_0^{k pi} sin(t) t^(1-alpha) dt
LAMBDA_K = {
    2.25: {1: 2.0779559524670633, 2: 1.7808872253172316,
           3: 1.9346532962284638, 10: 1.8623794162104209},
    2.5: {1: 2.6514692530410835, 2: 2.4477395857066813,
          3: 2.5399241391652557, 10: 2.5009704763636965},
    2.75: {1: 4.5696066870439008, 2: 4.4296900307202072,
           3: 4.4849826484443899, 10: 4.4637817775899391},
}

# closed form -Gamma(2-alpha) sin(pi (alpha-2) / 2)
LAMBDA_INF = {2.25: 1.8757866791075366, 2.5: 2.5066282746310005,
              2.75: 4.4661690494351279}

Q_ASYMPTOTE = {2.25: 5.1575971234228135, 2.5: 4.7998811263154041,
               2.75: 6.2197511205216451}

# Si_beta(x) = int_0^x sin(t) t^(-1-beta) dt
SI_BETA = {
    0.25: {0.5: 0.78386052391850343, np.pi: 2.0779559524670633,
           10.0: 1.9253768888855324},
    0.5: {0.5: 1.4025099540526798, np.pi: 2.6514692530410835,
          10.0: 2.5346815589370736},
    0.75: {0.5: 3.3481161401919854, np.pi: 4.5696066870439008,
           10.0: 4.4820197574098869},
}

# length-one round circle
CIRCLE_ENERGY = {2.0: 4.0, 2.25: 7.0308553150319476,
                 2.5: 13.504887158907511, 2.75: 33.41921131788665}

# gradient of the circle is this constant times gamma''; equals
# (alpha - 2) * E^alpha(circle) by differentiating the dilation law
CIRCLE_H_CONST = {2.25: 1.7577138287579869, 2.5: 6.7524435794537556,
                  2.75: 25.064408488414987}
