#!/usr/bin/env python3
# Independent reference values frozen into the unit tests. Plain numpy, no
# code shared with the library. Run: python3 tests/oracles/frozen_values.py
import numpy as np

np.set_printoptions(precision=17)


def cartpole_rhs(x, u, mc=1.0, mp=0.1, l=0.5, g=9.81):
    _, xd, th, thd = x
    s, c = np.sin(th), np.cos(th)
    den = mc + mp * s * s
    f = np.array([xd, mp * s * (l * thd**2 + g * c) / den, thd,
                  (-mp * l * thd**2 * c * s - (mc + mp) * g * s) / (l * den)])
    G = np.array([0.0, 1.0 / den, 0.0, -c / (l * den)])
    return f, G


def cartpole_q(x, w=(2.5, 1.0, 50.0, 1.0)):
    return (w[0] * x[0]**2 + w[1] * x[1]**2 + w[2] * (1 + np.cos(x[2]))**2 +
            w[3] * x[3]**2)


def cartpole_rollout_cost():
    """N=3 rollout, control-channel noise, R = lambda, identity terms."""
    lam, c, dt = 1.3, 1.5, 0.02
    x = np.array([0.1, -0.2, 2.9, 0.3])
    us = [1.5, -0.5, 2.0]
    eps_d = [0.3, -0.1, 0.2]
    jump = [0, 1, 0]
    eps_j = [0.0, 0.8, 0.0]
    total = 0.0
    for k in range(3):
        eps = eps_d[k] + eps_j[k]
        qt = (cartpole_q(x) + 0.5 * us[k] * lam * us[k] +
              lam * us[k] * eps / np.sqrt(dt) +
              0.5 * lam * (1 - 1 / c) * eps * eps / dt)
        total += qt * dt
        f, G = cartpole_rhs(x, us[k])
        noise = eps_d[k] * np.sqrt(dt) + jump[k] * eps_j[k] * np.sqrt(dt)
        x = x + (f + G * us[k]) * dt + G * noise
    total += 10.0 * cartpole_q(x)
    return total, x


def control_cost_matrix():
    lam = 1.7
    G = np.array([[1.0, 0.5], [0.2, -1.0], [0.3, 0.7]])
    B = G @ np.diag([1.0, 2.0])
    return lam * G.T @ np.linalg.pinv(B @ B.T) @ G


def scalar_trajectory_cost():
    """N=2, x' = -0.5 x + u, q = x^2, phi = 3 x^2, lambda=0.7, c=2, dt=0.1."""
    lam, c, dt, R = 0.7, 2.0, 0.1, 0.9
    xs = [1.0, 0.8, 0.5]
    us = [0.4, -0.3]
    eps = [0.25, -0.6]
    total = 0.0
    for k in range(2):
        qt = (xs[k]**2 + 0.5 * R * us[k]**2 + lam * us[k] * eps[k] / np.sqrt(dt)
              + 0.5 * lam * (1 - 1 / c) * eps[k]**2 / dt)
        total += qt * dt
    return total + 3.0 * xs[2]**2


if __name__ == "__main__":
    cost, xn = cartpole_rollout_cost()
    print("cartpole_rollout_cost %.17g" % cost)
    print("cartpole_final_state", " ".join("%.17g" % v for v in xn))
    print("control_cost_matrix", " ".join("%.17g" % v for v in
                                          control_cost_matrix().ravel()))
    print("scalar_trajectory_cost %.17g" % scalar_trajectory_cost())
