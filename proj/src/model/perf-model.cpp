#include "minet/model/perf-model.hpp"
#include "minet/core/error.hpp"

#include <algorithm>
#include <ostream>

namespace minet::model {

namespace {

constexpr double MEGABYTE = 1e6;
constexpr double PROTOTYPE_BAND_MB = 125.0;
constexpr double PROTOTYPE_K = 10000.0;

const Polynomial&
consensusFitMegabytes()
{
  static const Polynomial p{11.2500, 2.0714, -0.1920, 0.0312};
  return p;
}

} // namespace

ModelParams
ModelParams::prototype(double n)
{
  ModelParams p;
  p.n = n;
  p.nb = n;
  p.nc = n - 1;
  p.nbc = n - 1;
  return p;
}

void
ModelParams::validate() const
{
  for (double v : {n, nb, nc, M, H, T, Hv, Vb, Hr, Rb, K, band, a})
    if (!(v > 0))
      throw Error(Errc::ConfigInvalid, "model parameters must be positive");
  if (nbc < 0 || nbc > std::min(nb, nc))
    throw Error(Errc::ConfigInvalid, "n_bc must lie in [0, min(n_b, n_c)]");
}

TransmissionBytes
transmissionBytes(const ModelParams& p)
{
  double fanout = p.nb + p.nc - p.nbc - 1;
  double voteMessage = p.Hv + p.nb * p.Vb;
  TransmissionBytes b;
  b.bookkeeping = fanout * (p.M + p.H + p.T * p.K);
  b.voting = p.nc * (p.M + voteMessage);
  b.sealing = fanout * (p.M + p.Hr + p.nb * p.Rb + p.nc * voteMessage);
  return b;
}

TransmissionTimes
transmissionTimes(const ModelParams& p)
{
  auto b = transmissionBytes(p);
  TransmissionTimes t;
  t.bookkeeping = b.bookkeeping / p.band;
  t.voting = b.voting / p.band;
  t.sealing = b.sealing / p.band;
  t.total = t.bookkeeping + t.voting + t.sealing;
  return t;
}

ComputationTimes
computationTimes(double n)
{
  return {
    0.0041 * n + 0.0174,
    0.0130 * n + 0.0229,
    0.0012 * n * n - 0.0082 * n + 0.0415,
    0.0052 * n + 0.0062,
  };
}

double
consensusTimeFit(double n)
{
  return consensusFitMegabytes()(n) / PROTOTYPE_BAND_MB;
}

Polynomial
fittedTransmissionMegabytes()
{
  return {-0.3214, 0.3213, 0.0008, 0.0001};
}

double
fittedTransmissionTime(double n, double band)
{
  return fittedTransmissionMegabytes()(n) / (band / MEGABYTE);
}

double
residualComputationTime(double n)
{
  return consensusTimeFit(n) - fittedTransmissionTime(n, PROTOTYPE_BAND_MB * MEGABYTE);
}

Polynomial
printedResidualComputation()
{
  return Polynomial{11.5714, 1.7501, -0.1928, 0.0311} * (1.0 / PROTOTYPE_BAND_MB);
}

double
scaledComputationTime(double n, double a)
{
  double leaderShare = 0.0012 * n * n + 0.0141 * n + 0.0880;
  double otherShare = n * (0.0223 * n + 0.0465);
  return residualComputationTime(n) / a * (1.0 + leaderShare / otherShare);
}

double
scaledComputationTimeExpanded(double n, double a)
{
  Polynomial num{0.0880, 0.0606, 0.0235};
  Polynomial residual{11.5714, 1.7501, -0.1928, 0.0311};
  Polynomial den{0.0, 5.8125, 2.7875};
  return num(n) * residual(n) / (a * den(n));
}

double
throughputLimit(double n, double a, double band)
{
  return PROTOTYPE_K * n / (scaledComputationTime(n, a) + fittedTransmissionTime(n, band));
}

TimingBreakdown
evaluate(const ModelParams& p)
{
  p.validate();
  TimingBreakdown t;
  auto tran = transmissionTimes(p);
  t.tTran1 = tran.bookkeeping;
  t.tTran2 = tran.voting;
  t.tTran3 = tran.sealing;
  t.tTran = tran.total;
  auto comp = computationTimes(p.n);
  t.tComp1 = comp.s1;
  t.tComp2 = comp.s2;
  t.tComp3 = comp.s3;
  t.tComp4 = comp.s4;
  t.tComp = comp.total();
  t.tCons = t.tComp + t.tTran;
  t.tCompScaled = scaledComputationTime(p.n, p.a);
  t.tConsPrime = t.tCompScaled + fittedTransmissionTime(p.n, p.band);
  t.throughput = p.K * p.n / t.tConsPrime;
  return t;
}

Polynomial
structuralTransmissionMegabytes(const ModelParams& p)
{
  // n_b = n, n_c = n - 1, n_bc = n - 1, so the fan-out n_b + n_c - n_bc - 1 is n - 1.
  const auto n = Polynomial::identity();
  const auto nb = n;
  const auto nc = n - Polynomial{1.0};
  const auto fanout = nc;
  const auto voteMessage = Polynomial{p.Hv} + nb * p.Vb;

  auto bookkeeping = fanout * Polynomial{p.M + p.H + p.T * p.K};
  auto voting = nc * (Polynomial{p.M} + voteMessage);
  auto sealing = fanout * (Polynomial{p.M + p.Hr} + nb * p.Rb + nc * voteMessage);
  return (bookkeeping + voting + sealing) * (1.0 / MEGABYTE);
}

SweepRow
evaluatePoint(double n, double a, double band)
{
  if (!(n >= 1) || !(a > 0) || !(band > 0))
    throw Error(Errc::ConfigInvalid, "need n >= 1, a > 0 and band > 0");
  SweepRow r;
  r.n = n;
  r.a = a;
  r.band = band;
  r.tTran = fittedTransmissionTime(n, band);
  r.tComp = residualComputationTime(n);
  r.tCons = r.tComp + r.tTran;
  r.throughput = throughputLimit(n, a, band);
  return r;
}

std::vector<SweepRow>
sweepGrid(const std::vector<double>& ns, const std::vector<double>& as, const std::vector<double>& bands)
{
  if (ns.empty() || as.empty() || bands.empty())
    throw Error(Errc::ConfigInvalid, "every sweep range needs at least one value");
  std::vector<SweepRow> rows;
  rows.reserve(ns.size() * as.size() * bands.size());
  for (double n : ns)
    for (double a : as)
      for (double band : bands)
        rows.push_back(evaluatePoint(n, a, band));
  return rows;
}

void
writeSweepCsv(std::ostream& os, const std::vector<SweepRow>& rows)
{
  auto old = os.precision(10);
  os << "n,a,band,t_tran,t_comp,t_cons,throughput\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.a << ',' << r.band << ',' << r.tTran << ',' << r.tComp << ',' << r.tCons << ','
       << r.throughput << '\n';
  os.precision(old);
}

} // namespace minet::model
