#pragma once

// Expected symbolic target tables, transcribed case by case from the growth
// formulas: finite-domain rows (optimal Orlicz and rearrangement-invariant
// targets), whole-space zero-trace and full-norm rows (two-branch Young
// descriptors with their weights), and the model continuity moduli.
inline const char* kGoldenFixture =
    "finite n=3 p=2 alpha=0: orlicz=L^6; ri=L^(6,2)\n"
    "finite n=2 p=1.5 alpha=1: orlicz=L^6(log L)^4; ri=L^(6,1.5;0.666667)\n"
    "finite n=3 p=1 alpha=0: orlicz=L^1.5; ri=L^(1.5,1)\n"
    "finite n=2 p=2 alpha=0: orlicz=exp L^2; ri=L^(inf,2;-1)\n"
    "finite n=2 p=2 alpha=0.5: orlicz=exp L^4; ri=L^(inf,2;-0.75)\n"
    "finite n=3 p=3 alpha=2: orlicz=exp exp L^1.5; ri=L^(inf,3;-1/n,-1)\n"
    "finite n=2 p=2 alpha=1.5: orlicz=L^inf; ri=L^inf\n"
    "finite n=2 p=4 alpha=0: orlicz=L^inf; ri=L^inf\n"
    "rn-e10 n=3 near0=(1.5,0) nearinf=(2,1): orlicz=LA{near0: t^3; nearinf: t^6 (log t)^3}; "
    "ri=L(A,n=3){near0: t^1.5; nearinf: t^2 (log t)^1}\n"
    "rn-e10 n=3 near0=(3,3) nearinf=(2,0): orlicz=LA{near0: exp(-t^-3); nearinf: t^6}; "
    "ri=L(A,n=3){near0: t^3; nearinf: t^2}\n"
    "rn-e10 n=2 near0=(1.5,0) nearinf=(2,0.5): orlicz=LA{near0: t^6; nearinf: exp(t^4)}; "
    "ri=L(A,n=2){near0: t^1.5; nearinf: t^2 (log t)^-1.5}\n"
    "rn-e10 n=2 near0=(1.5,0) nearinf=(2,1): orlicz=LA{near0: t^6; nearinf: exp(exp(t^2))}; "
    "ri=L(A,n=2){near0: t^1.5; nearinf: t^2 (log t)^-1 (loglog t)^-2}\n"
    "rn-e10 n=2 near0=(1.5,0) nearinf=(4,0): orlicz=LA{near0: t^6; nearinf: inf}; "
    "ri=LB(nu=min(s^-1/2,1)){near0: t^1.5; nearinf: inf}\n"
    "rn-e1 n=3 near0=(2,-1) nearinf=(2,0): orlicz=LA{near0: t^2 (log 1/t)^-1; nearinf: t^6}; "
    "ri=Lambda(varpi=max(s^-1/3,1)){near0: t^2 (log 1/t)^-1; nearinf: t^2}\n"
    "rn-e1 n=2 near0=(2,0) nearinf=(2,0.5): orlicz=LA{near0: t^2; nearinf: exp(t^4)}; "
    "ri=Lambda(varpi=max(s^-1/2,1)){near0: t^2; nearinf: t^2 (log t)^-1.5}\n"
    "rn-e1 n=2 near0=(2,0) nearinf=(2,1): orlicz=LA{near0: t^2; nearinf: exp(exp(t^2))}; "
    "ri=Lambda(varpi=max(s^-1/2,1)){near0: t^2; nearinf: t^2 (log t)^-1 (loglog t)^-2}\n"
    "rn-e1 n=2 near0=(4,0) nearinf=(4,0): orlicz=LA{near0: t^4; nearinf: inf}; "
    "ri=LA{near0: t^4; nearinf: inf}\n"
    "sigma linf n=2: r (log 1/r)^1\n"
    "sigma exp beta=0.5 n=2: r (log 1/r)^3\n"
    "sigma exp beta=1 n=2: r (log 1/r)^2\n"
    "sigma exp beta=2 n=2: r (log 1/r)^1.5\n"
    "sigma lnlog n=2 alpha=3: (log 1/r)^-1\n";
