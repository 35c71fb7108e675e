#ifndef SEQTREE_NN_HPP
#define SEQTREE_NN_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace seqtree::nn {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Trainable tensor with gradient accumulator and Adam moments.
struct Param {
  std::string name;
  Mat value;
  Mat grad;
  Mat m;
  Mat v;

  void init(const std::string& param_name, int rows, int cols, std::mt19937_64& rng,
            bool zero = false);
  void zero_grad() { grad.setZero(); }
  long size() const { return value.size(); }
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// One bias-corrected Adam update over the given parameters; `t` is the
// 1-based global step count.
void adam_step(std::vector<Param*>& params, const AdamConfig& cfg, long t);

// Reverse-mode tape over Eigen matrices. Vars are indices into the tape;
// backward() walks the nodes in reverse creation order. One tape per example.
class Tape {
 public:
  struct Var {
    int idx = -1;
    bool valid() const { return idx >= 0; }
  };

  Var leaf(Param& p);
  Var emb_col(Param& table, int col);
  Var emb_cols(Param& table, const std::vector<int>& cols);
  Var constant(Mat m);
  Var zeros(int rows);

  Var matvec(Var W, Var x);    // W * x
  Var matvec_t(Var M, Var y);  // M^T * y
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var concat(const std::vector<Var>& parts);  // vertical
  Var hcat(const std::vector<Var>& cols);     // column-wise
  Var tanh_(Var a);
  Var sigmoid_(Var a);
  Var cmul(Var a, Var b);
  Var segment(Var a, int offset, int len);
  Var softmax(Var a);    // column vector
  Var logsumexp(Var a);  // 1x1
  Var pick(Var a, int i);
  Var pick_sum(Var a, const std::vector<int>& idx);
  Var mul11(Var a, Var b);  // scalar product of 1x1 nodes
  Var log11(Var a);
  Var scale(Var a, double c);
  // sum_i coeffs[i] * scalars[i], as a 1x1 node
  Var sum_scaled(const std::vector<Var>& scalars, const std::vector<double>& coeffs);

  const Mat& value(Var v) const { return nodes_[v.idx].val; }
  double scalar(Var v) const { return nodes_[v.idx].val(0, 0); }

  void backward(Var loss);
  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Mat val;
    Mat grad;
    std::function<void(Tape&, int)> back;  // may be empty (constants)
  };

  int push(Mat val, std::function<void(Tape&, int)> back);
  Mat& grad_of(int idx);

  std::vector<Node> nodes_;
};

// LSTM cell parameters: gates in [input; forget; output; candidate] order.
struct LstmParams {
  Param Wx, Wh, b;
  void init(const std::string& prefix, int input_dim, int hidden, std::mt19937_64& rng);
  std::vector<Param*> params();
};

struct LstmStateVar {
  Tape::Var h, c;
};

LstmStateVar lstm_step(Tape& tape, LstmParams& p, Tape::Var x, const LstmStateVar& prev);

// Value-level twin of lstm_step for inference paths.
struct LstmState {
  Vec h, c;
};
LstmState lstm_step_plain(const LstmParams& p, const Vec& x, const LstmState& prev);

Vec softmax_plain(const Vec& z);

}  // namespace seqtree::nn

#endif
