#ifndef MINET_MODEL_PERF_MODEL_HPP
#define MINET_MODEL_PERF_MODEL_HPP

#include "minet/model/polynomial.hpp"

#include <iosfwd>
#include <vector>

namespace minet::model {

/// Bandwidths are bytes per second; the fitted formulas work in decimal
/// megabytes, so 125e6 B/s is the prototype's 125 MB/s.
struct ModelParams
{
  double n = 3;
  double nb = 3;
  double nc = 2;
  double nbc = 2;
  double M = 266;  // message header
  double H = 692;  // block header
  double T = 40;   // transaction
  double Hv = 400; // vote message header
  double Vb = 100; // one validation vote
  double Hr = 170; // block group header
  double Rb = 400; // one tally record
  double K = 10000;
  double band = 125e6;
  double a = 1;

  /// Every node keeps books and votes, except that the leader does not vote.
  static ModelParams
  prototype(double n);

  /// Throws ConfigInvalid.
  void
  validate() const;
};

struct TransmissionTimes
{
  double bookkeeping = 0; // S1 block distribution
  double voting = 0;      // S2 vote messages into the leader
  double sealing = 0;     // S3 block group header broadcast
  double total = 0;
};

TransmissionTimes
transmissionTimes(const ModelParams& p);

/// Bytes each step puts on its bottleneck link.
struct TransmissionBytes
{
  double bookkeeping = 0;
  double voting = 0;
  double sealing = 0;
};

TransmissionBytes
transmissionBytes(const ModelParams& p);

struct ComputationTimes
{
  double s1 = 0; // bookkeeper
  double s2 = 0; // consortium node
  double s3 = 0; // leader
  double s4 = 0; // every node

  double
  total() const noexcept
  {
    return s1 + s2 + s3 + s4;
  }
};

/// Per-step fits measured on the prototype hardware.
ComputationTimes
computationTimes(double n);

/// Fitted round time t_cons(n) on the prototype, seconds.
double
consensusTimeFit(double n);

/// Fitted transmission-volume numerator in megabytes.
Polynomial
fittedTransmissionMegabytes();

/// Fitted transmission time at `band` bytes/second.
double
fittedTransmissionTime(double n, double band);

/// Computation time left after removing fitted transmission at 125 MB/s.
double
residualComputationTime(double n);

/// The residual computation time with the coefficients printed for it.
Polynomial
printedResidualComputation();

/// Computation time for a network with `a` times the prototype's computing
/// power, spread over leader and non-leader work.
double
scaledComputationTime(double n, double a);

/// Closed form of scaledComputationTime as printed (single rational function).
double
scaledComputationTimeExpanded(double n, double a);

/// K * n over the minimum round time; K is fixed at the prototype's 10000.
double
throughputLimit(double n, double a, double band);

struct TimingBreakdown
{
  double tTran1 = 0;
  double tTran2 = 0;
  double tTran3 = 0;
  double tTran = 0;
  double tComp1 = 0;
  double tComp2 = 0;
  double tComp3 = 0;
  double tComp4 = 0;
  double tComp = 0;
  double tCons = 0;
  double tCompScaled = 0;
  double tConsPrime = 0;
  double throughput = 0;
};

/// Structural transmission and per-step computation fits for `p`; the
/// scaled and limit fields come from the fitted composition.
TimingBreakdown
evaluate(const ModelParams& p);

/// Transmission volume of one round, in megabytes, as a polynomial in n for
/// the prototype role assignment and the message sizes in `p`.
Polynomial
structuralTransmissionMegabytes(const ModelParams& p);

struct SweepRow
{
  double n = 0;
  double a = 0;
  double band = 0;
  double tTran = 0;       // fitted, at this band
  double tComp = 0;       // residual computation on prototype hardware
  double tCons = 0;       // tComp + tTran
  double throughput = 0;  // throughputLimit at (n, a, band)
};

SweepRow
evaluatePoint(double n, double a, double band);

std::vector<SweepRow>
sweepGrid(const std::vector<double>& ns, const std::vector<double>& as, const std::vector<double>& bands);

/// Header "n,a,band,t_tran,t_comp,t_cons,throughput" and one row per point.
void
writeSweepCsv(std::ostream& os, const std::vector<SweepRow>& rows);

} // namespace minet::model

#endif // MINET_MODEL_PERF_MODEL_HPP
