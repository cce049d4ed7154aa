// daeforms: Wong sequences, quasi feedback forms and witness verification
// for linear descriptor systems s E x = A x + B u.
//
// Exit status: 0 success, 1 a mathematical check failed, 2 input error.

#include <daeforms/io.hpp>
#include <daeforms/pd_feedback.hpp>
#include <daeforms/p_feedback.hpp>
#include <daeforms/wong.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace daeforms;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

template <class Seq>
std::string tuple_text(const Seq& xs) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (auto x : xs) {
    os << (first ? "" : ", ") << x;
    first = false;
  }
  os << ')';
  return os.str();
}

void print_subspace(std::ostream& os, const std::string& label, const Subspace& s) {
  os << label << ": dim " << s.dim() << ", basis " << s.basis() << '\n';
}

void print_system(std::ostream& os, const std::string& label, const SystemTriple& sys) {
  os << label << ":\n  E = " << sys.E << "\n  A = " << sys.A << "\n  B = " << sys.B << '\n';
}

/// Prints every check that failed and returns whether all passed.
bool report(std::ostream& os, const std::string& what, const CheckReport& rep) {
  if (rep.passed()) {
    os << what << ": PASS (" << rep.checks.size() << " checks)\n";
    return true;
  }
  const Check first = *rep.first_failure();
  os << what << ": FAIL, first failing condition: " << first.name;
  if (!first.detail.empty()) os << " (" << first.detail << ')';
  os << '\n';
  return false;
}

void write_json(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot write file");
  out << doc.dump(2) << '\n';
}

int cmd_wong(const std::string& input, bool check_identities) {
  const SystemTriple sys = system_from_json(read_json_file(input), input);
  const WongReport w = wong_limits(sys);
  auto& os = std::cout;
  for (std::size_t i = 0; i < w.v_chain.size(); ++i) print_subspace(os, "V^" + std::to_string(i), w.v_chain[i]);
  for (std::size_t j = 0; j < w.w_chain.size(); ++j) print_subspace(os, "W^" + std::to_string(j), w.w_chain[j]);
  print_subspace(os, "V*", w.v_limit);
  print_subspace(os, "W*", w.w_limit);
  os << "i* = " << w.i_star << '\n' << "j* = " << w.j_star << '\n';
  if (!check_identities) return kOk;

  bool ok = true;
  for (const auto& c : check_limit_identities(sys, w).checks) {
    os << (c.holds ? "holds: " : "VIOLATED: ") << c.name << '\n';
    ok = ok && c.holds;
  }
  const bool proj = augmented_projection_check(sys, w);
  os << (proj ? "holds: " : "VIOLATED: ") << "limits of s[E, 0] - [A, B] projected to the state equal V*, W*\n";
  return ok && proj ? kOk : kCheckFailed;
}

int cmd_qpff(const std::string& input, bool decouple, bool classify, const std::string& output) {
  const SystemTriple sys = system_from_json(read_json_file(input), input);
  const QpffDecomposition q = compute_qpff(sys);
  auto& os = std::cout;
  os << "l = " << tuple_text(q.sizes.l) << '\n'
     << "n = " << tuple_text(q.sizes.n) << '\n'
     << "m = " << tuple_text(q.sizes.m) << '\n';
  print_system(os, "transformed", q.transformed);
  bool ok = report(os, "quasi P-feedback form", verify_qpff(q.transformed, q.sizes));

  Json doc = Json::object();
  doc["sizes"] = sizes_to_json(q.sizes);
  doc["transformed"] = system_to_json(q.transformed);
  doc["witness"] = witness_to_json(PTransform{q.witness.S, q.witness.T, q.witness.V, q.witness.F_P});

  if (decouple && ok) {
    const QpffDecoupling d = decouple_qpff(q.transformed, q.sizes);
    print_system(os, "decoupled", d.decoupled);
    const bool pattern = is_decoupled_qpff(d.decoupled, q.sizes);
    os << "off-diagonal blocks zero: " << (pattern ? "yes" : "no") << '\n'
       << "Sylvester residuals zero: " << (d.residuals_zero() ? "yes" : "no") << '\n';
    ok = ok && pattern && d.residuals_zero();
    ok = report(os, "decoupled form", verify_qpff(d.decoupled, q.sizes)) && ok;
    ok = report(os, "decoupled subspace identities", check_decoupled_qpff_identities(d.decoupled, q.sizes)) && ok;
    doc["decoupled"] = system_to_json(d.decoupled);
    doc["decoupling_witness"] = witness_to_json(d.witness);
  }

  if (classify) {
    const ControllabilityClassification c = classify_controllability(sys);
    for (std::size_t k = 0; k < 3; ++k) {
      os << "block " << k + 1 << " (" << c.sizes.l[k] << "x" << c.sizes.n[k] << ", " << c.sizes.m[k]
         << " inputs): " << c.labels[k] << '\n';
    }
    os << "redundant inputs (dim ker B) = " << c.redundant_inputs << '\n'
       << "constrained inputs = " << c.constrained_inputs << '\n';
    Json cls = Json::array();
    for (const auto& label : c.labels) cls.push_back(label);
    doc["classification"] = {{"labels", cls},
                             {"redundant_inputs", c.redundant_inputs},
                             {"constrained_inputs", c.constrained_inputs}};
  }

  if (!output.empty()) write_json(output, doc);
  return ok ? kOk : kCheckFailed;
}

int cmd_qpdff(const std::string& input, bool decouple, const std::string& output) {
  const SystemTriple sys = system_from_json(read_json_file(input), input);
  const QpdffDecomposition q = compute_qpdff(sys);
  auto& os = std::cout;
  os << "l = " << tuple_text(q.sizes.l) << " + " << q.sizes.m[1] << '\n'
     << "n = " << tuple_text(q.sizes.n) << '\n'
     << "m1 = " << q.sizes.m[0] << '\n'
     << "m2 = " << q.sizes.m[1] << '\n';
  print_system(os, "transformed", q.transformed);
  bool ok = report(os, "quasi PD-feedback form", verify_qpdff(q.transformed, q.sizes));

  Json doc = Json::object();
  doc["sizes"] = sizes_to_json(q.sizes);
  doc["transformed"] = system_to_json(q.transformed);
  doc["witness"] = witness_to_json(q.witness);

  if (decouple && ok) {
    const QpdffDecoupling d = decouple_qpdff(q.transformed, q.sizes);
    print_system(os, "decoupled", d.decoupled);
    const bool pattern = is_decoupled_qpdff(d.decoupled, q.sizes);
    os << "off-diagonal blocks zero: " << (pattern ? "yes" : "no") << '\n'
       << "Sylvester residuals zero: " << (d.residuals_zero() ? "yes" : "no") << '\n';
    ok = ok && pattern && d.residuals_zero();
    ok = report(os, "decoupled form", verify_qpdff(d.decoupled, q.sizes)) && ok;
    ok = report(os, "decoupled subspace identities", check_decoupled_qpdff_identities(d.decoupled, q.sizes)) && ok;
    doc["decoupled"] = system_to_json(d.decoupled);
    doc["decoupling_witness"] = witness_to_json(d.witness);
  }

  if (!output.empty()) write_json(output, doc);
  return ok ? kOk : kCheckFailed;
}

int cmd_verify(const std::string& input, const std::string& witness_path, const std::string& form,
               const std::string& data_path) {
  const SystemTriple sys = system_from_json(read_json_file(input), input);
  const WitnessFile wf = witness_from_json(read_json_file(witness_path), witness_path);
  const Json data = read_json_file(data_path);
  const bool p_form = form == "pff" || form == "qpff";
  if (p_form && wf.kind != "P") throw ParseError(witness_path + ": form " + form + " needs a witness of kind \"P\"");

  SystemTriple result = sys;
  try {
    const PDTransform& t = wf.transform;
    result = p_form ? apply_p_transform(sys, PTransform{t.S, t.T, t.V, t.F_P}) : apply_pd_transform(sys, t);
  } catch (const std::invalid_argument& e) {
    throw ParseError(witness_path + ": " + e.what());
  }
  print_system(std::cout, "transformed", result);

  CheckReport rep;
  try {
    if (form == "pff") rep = pff_report(result, pff_data_from_json(data, data_path));
    else if (form == "pdff") rep = pdff_report(result, pdff_data_from_json(data, data_path));
    else if (form == "qpff") rep = verify_qpff(result, qpff_sizes_from_json(data, data_path));
    else rep = verify_qpdff(result, qpdff_sizes_from_json(data, data_path));
  } catch (const std::invalid_argument& e) {
    throw ParseError(data_path + ": " + e.what());
  }
  if (!rep.checks.empty() && rep.checks.front().name == "dimensions" && !rep.checks.front().passed) {
    throw ParseError(data_path + ": " + rep.checks.front().detail);
  }
  return report(std::cout, form, rep) ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Wong sequences and feedback forms of descriptor systems"};
  app.require_subcommand(1);

  std::string input, output, witness, form, data;
  bool check_identities = false, decouple = false, classify = false;

  auto* wong = app.add_subcommand("wong", "Print the Wong sequences and their limits");
  wong->add_option("input", input, "system file")->required();
  wong->add_flag("--check-identities", check_identities, "check the identities the limits satisfy");

  auto* qpff = app.add_subcommand("qpff", "Quasi proportional-feedback form");
  qpff->add_option("input", input, "system file")->required();
  qpff->add_flag("--decouple", decouple, "also remove the off-diagonal blocks");
  qpff->add_flag("--classify", classify, "label the blocks by controllability");
  qpff->add_option("--output", output, "write the results as JSON");

  auto* qpdff = app.add_subcommand("qpdff", "Quasi proportional-derivative-feedback form");
  qpdff->add_option("input", input, "system file")->required();
  qpdff->add_flag("--decouple", decouple, "also remove the off-diagonal blocks");
  qpdff->add_option("--output", output, "write the results as JSON");

  auto* verify = app.add_subcommand("verify", "Apply a witness and check the claimed form");
  verify->add_option("input", input, "system file")->required();
  verify->add_option("--witness", witness, "witness file")->required();
  verify->add_option("--form", form, "claimed form")->required()->check(CLI::IsMember({"pff", "pdff", "qpff", "qpdff"}));
  verify->add_option("--data", data, "form data file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*wong) return cmd_wong(input, check_identities);
    if (*qpff) return cmd_qpff(input, decouple, classify, output);
    if (*qpdff) return cmd_qpdff(input, decouple, output);
    return cmd_verify(input, witness, form, data);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  }
}
