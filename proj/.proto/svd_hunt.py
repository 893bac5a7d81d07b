import numpy as np
from scipy.linalg import schur, sqrtm, qr, svd, lu

A0 = np.array([[1., 0., 1.], [2., -1., -1.], [1., -3., 6.]])
A1 = np.array([[1., -1., 1.], [1., -1., 1.], [1., -1., 1.]])
A2 = np.array([[-1., 1., 0.], [1., -1., 0.], [0., 0., 0.]])
A3 = np.array([[0., 0., 0.], [0., 1., -2.], [0., -2., 4.]])
Aks = [A1, A2, A3]
Minv = np.linalg.inv(A0)

def rho(M): return max(abs(np.linalg.eigvals(M)))

def per_unit(L, R):
    # residual check
    res = np.linalg.norm(L @ A0 @ R - np.eye(3))
    D = sum(np.abs(L @ Ak @ R) for Ak in Aks)
    return rho(D), res

target = 3.29613
U, s, Vt = svd(Minv)
S = np.diag(s)
cands = {}
cands["stated: Vt, U*S"] = (Vt, U @ S)
U2, s2, V2t = svd(A0)
S2 = np.diag(s2)
cands["A0 svd: S2inv U2t, V2"] = (np.linalg.inv(S2) @ U2.T, V2t.T)
cands["A0 svd: U2t, V2 S2inv"] = (U2.T, V2t.T @ np.linalg.inv(S2))
# polar of A0 = W P (right polar), P = V2 S2 V2t, W = U2 V2t
W = U2 @ V2t; P = V2t.T @ S2 @ V2t
Ph = sqrtm(P)
cands["polar right: Pinv^.5 Wt... (Ph^-1 Wt? no) Wt, Pinv"] = (W.T, np.linalg.inv(P))
cands["polar sym split: Ph^-1 Wt, Ph^-1"] = (np.linalg.inv(Ph) @ W.T, np.linalg.inv(Ph))
# left polar A0 = P2 W, P2 = U2 S2 U2t
P2 = U2 @ S2 @ U2.T
P2h = sqrtm(P2)
cands["polar left: P2inv, Wt"] = (np.linalg.inv(P2), W.T)
cands["polar left sym: P2h^-1, Wt P2h^-1"] = (np.linalg.inv(P2h), W.T @ np.linalg.inv(P2h))
# polar of Minv: Minv = Wm Pm
Um, sm, Vmt = U, s, Vt
Wm = Um @ Vmt; Pm = Vmt.T @ np.diag(sm) @ Vmt
Pmh = sqrtm(Pm)
cands["Minv polar: Wm? (Pm^.5?, ...) Pmh Vm-ish: Pmh, Wm... L=Pmh? no: L,R with LA0R=I: A0=(WmPm)^-1=Pm^-1 Wm^T: so L=Pmh? check: (Pmh, Wm Pmh)"] = (Pmh, Wm @ Pmh)
PmL = Um @ np.diag(sm) @ Um.T  # left polar Minv = PmL WmL, WmL = Wm
PmLh = sqrtm(PmL)
cands["Minv left polar: (PmLh Wm?, ...) => L=Wm? try (PmLh, Wm PmLh)? no A0=Wm^T PmL^-1: (L,R)=(PmLh Wm, PmLh)"] = (PmLh @ Wm, PmLh)
# schur of A0
T3, Q3 = schur(A0, output="real")
cands["schur A0: Tinv Qt, Q"] = (np.linalg.inv(T3) @ Q3.T, Q3)
cands["schur A0: Qt, Q Tinv"] = (Q3.T, Q3 @ np.linalg.inv(T3))
# schur of Minv
T4, Q4 = schur(Minv, output="real")
cands["schur Minv: T Q? A0=Q T^-1 Qt: (L,R)=(T Qt? no...) (Qt? ...) use (T4? ) L=T4? hmm: A0 = Q4 T4inv Q4t -> L=T4 Q4t? L A0 R = T4 Q4t Q4 T4inv Q4t R = Q4t R -> R=Q4"] = (T4 @ Q4.T, Q4)
cands["schur Minv other side: Q4t, Q4 T4"] = (Q4.T, Q4 @ T4)
# QR of A0 (not inverse)
Q5, R5 = qr(A0)
cands["qr A0: R5inv Q5t, I"] = (np.linalg.inv(R5) @ Q5.T, np.eye(3))
cands["qr A0 double: Q5t, R5inv"] = (Q5.T, np.linalg.inv(R5))
# LU of A0
P6, L6, U6 = lu(A0)
cands["lu A0: U6inv? (L,R)=(U6inv? ...) A0=P L U: (L,R)=((P6 L6)^-1, U6^-1)?"] = (np.linalg.inv(P6 @ L6), np.linalg.inv(U6))
# Vt and U swapped on stated formula
cands["swap: Ut, V*S"] = (U.T, Vt.T @ S)
cands["swap2: S Vt ... (V S? ...) (L,R)=(V? ...) try (S@U.T, Vt.T)"] = (S @ U.T, Vt.T)
# Cholesky of A0t A0
import numpy.linalg as la
G = A0.T @ A0
C = la.cholesky(G)  # G = C Ct
cands["chol AtA: (Ct)^-1? ... L=(A0 C^-T)^T? polar-ish: R=C^-T, L=C^T A0^-1? no closed: try (C.T @ la.inv(A0), la.inv(C.T))"] = (C.T @ la.inv(A0), la.inv(C.T))

for name, (L, R) in cands.items():
    v, res = per_unit(L, R)
    flag = " <== MATCH" if abs(v - target) / target < 1e-4 else ""
    print(f"{v:.6f}  res={res:.2e}  {name}{flag}")
