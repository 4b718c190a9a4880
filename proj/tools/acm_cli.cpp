#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acm/acm.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string iso_utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("short write to '" + p.string() + "'");
}

struct GlobalOpts {
  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 1;
};

void write_manifest(const GlobalOpts& g, const std::string& subcommand, ordered_json flags) {
  ordered_json m;
  m["subcommand"] = subcommand;
  m["flags"] = std::move(flags);
  m["seed"] = g.seed;
  m["library_version"] = acm::version();
  m["start_time"] = iso_utc_now();
  write_file(fs::path(g.out_dir) / "manifest.json", m.dump(2) + "\n");
}

acm::RotatedBox parse_box_arg(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double v = 0.0;
    if (!acm::detail::parse_double(tok, v))
      throw std::invalid_argument("bad box component '" + tok + "' in '" + s + "'");
    vals.push_back(v);
  }
  if (vals.size() != 5)
    throw std::invalid_argument("box must be 'cx,cy,w,h,theta_deg', got '" + s + "'");
  if (vals[2] <= 0.0 || vals[3] <= 0.0) throw std::invalid_argument("box sides must be positive");
  return acm::RotatedBox{vals[0], vals[1], vals[2], vals[3], vals[4] * acm::kPi / 180.0}
      .canonicalized();
}

const char* kFitConfigKeys[] = {"arm",     "kind",         "aspect",      "samples",
                                "epochs",  "lr",           "seed",        "weights",
                                "unfreeze_box", "direct_box_objective", "sweep_steps",
                                "grad_clip",    "hidden"};

acm::FitConfig fit_config_from_json(const json& j) {
  acm::FitConfig cfg;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kFitConfigKeys) known = known || key == k;
    if (!known) throw std::invalid_argument("unknown config key '" + key + "'");
    (void)value;
  }
  if (j.contains("arm")) cfg.arm = acm::arm_from_string(j.at("arm").get<std::string>());
  if (j.contains("kind")) cfg.kind = acm::loss_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("aspect")) cfg.aspect = j.at("aspect").get<double>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
  if (j.contains("epochs")) cfg.epochs = j.at("epochs").get<int>();
  if (j.contains("lr")) cfg.lr = j.at("lr").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    for (const auto& [key, value] : w.items()) {
      if (key != "lambda_box" && key != "lambda_acm")
        throw std::invalid_argument("unknown weights key '" + key + "'");
      (void)value;
    }
    if (w.contains("lambda_box")) cfg.weights.lambda_box = w.at("lambda_box").get<double>();
    if (w.contains("lambda_acm")) cfg.weights.lambda_acm = w.at("lambda_acm").get<double>();
  }
  if (j.contains("unfreeze_box")) cfg.unfreeze_box = j.at("unfreeze_box").get<bool>();
  if (j.contains("direct_box_objective"))
    cfg.direct_box_objective = j.at("direct_box_objective").get<bool>();
  if (j.contains("sweep_steps")) cfg.sweep_steps = j.at("sweep_steps").get<int>();
  if (j.contains("grad_clip")) cfg.grad_clip = j.at("grad_clip").get<double>();
  if (j.contains("hidden")) cfg.hidden = j.at("hidden").get<std::vector<int>>();
  return cfg;
}

ordered_json fit_config_to_json(const acm::FitConfig& cfg) {
  ordered_json j;
  j["arm"] = acm::to_string(cfg.arm);
  j["kind"] = acm::to_string(cfg.kind);
  j["aspect"] = cfg.aspect;
  j["samples"] = cfg.samples;
  j["epochs"] = cfg.epochs;
  j["lr"] = cfg.lr;
  j["seed"] = cfg.seed;
  j["weights"] = ordered_json{{"lambda_box", cfg.weights.lambda_box},
                              {"lambda_acm", cfg.weights.lambda_acm}};
  j["unfreeze_box"] = cfg.unfreeze_box;
  j["direct_box_objective"] = cfg.direct_box_objective;
  j["sweep_steps"] = cfg.sweep_steps;
  j["grad_clip"] = cfg.grad_clip;
  j["hidden"] = cfg.hidden;
  return j;
}

ordered_json model_to_json(const acm::TrainedModel& m) {
  ordered_json j;
  j["library_version"] = acm::version();
  j["config"] = fit_config_to_json(m.cfg);
  j["widths"] = m.net.widths;
  ordered_json layers = ordered_json::array();
  for (const acm::MlpLayer& l : m.net.layers)
    layers.push_back(ordered_json{{"w", l.w}, {"b", l.b}});
  j["layers"] = std::move(layers);
  return j;
}

acm::TrainedModel model_from_json(const json& j) {
  acm::TrainedModel m;
  m.cfg = fit_config_from_json(j.at("config"));
  m.net.widths = j.at("widths").get<std::vector<int>>();
  for (const json& l : j.at("layers")) {
    acm::MlpLayer layer;
    layer.w = l.at("w").get<std::vector<double>>();
    layer.b = l.at("b").get<std::vector<double>>();
    m.net.layers.push_back(std::move(layer));
  }
  if (m.net.widths.size() != m.net.layers.size() + 1)
    throw std::invalid_argument("model widths and layers disagree");
  for (size_t i = 0; i < m.net.layers.size(); ++i) {
    acm::MlpLayer& layer = m.net.layers[i];
    layer.in = m.net.widths[i];
    layer.out = m.net.widths[i + 1];
    if (layer.w.size() != static_cast<size_t>(layer.in) * layer.out ||
        layer.b.size() != static_cast<size_t>(layer.out))
      throw std::invalid_argument("model layer " + std::to_string(i) + " has wrong shape");
  }
  return m;
}

std::string sweep_to_csv(const acm::SweepReport& rep) {
  std::string out = "phi_deg,theta_pred_deg,theta_target_deg,ang_err_deg,iou\n";
  const double r2d = 180.0 / acm::kPi;
  for (const acm::SweepRow& r : rep.rows) {
    out += fmt9(r.phi * r2d) + "," + fmt9(r.theta_pred * r2d) + "," + fmt9(r.theta_target * r2d) +
           "," + fmt9(r.ang_err * r2d) + "," + fmt9(r.iou) + "\n";
  }
  return out;
}

ordered_json sweep_to_json(const acm::SweepReport& rep) {
  const double r2d = 180.0 / acm::kPi;
  ordered_json rows = ordered_json::array();
  for (const acm::SweepRow& r : rep.rows)
    rows.push_back(ordered_json{{"phi_deg", r.phi * r2d},
                                {"theta_pred_deg", r.theta_pred * r2d},
                                {"theta_target_deg", r.theta_target * r2d},
                                {"ang_err_deg", r.ang_err * r2d},
                                {"iou", r.iou}});
  ordered_json j;
  j["rows"] = std::move(rows);
  j["max_err_deg"] = rep.max_err * r2d;
  j["mean_err_deg"] = rep.mean_err * r2d;
  j["min_iou"] = rep.min_iou;
  j["breakpoint_width_deg"] = rep.breakpoint_width * r2d;
  return j;
}

// Two fixed-scale polylines: IoU in [0,1] and angular error in degrees over
// the half-period range.
std::string sweep_to_svg(const acm::SweepReport& rep, double aspect) {
  const double W = 720.0, H = 360.0, ml = 50.0, mb = 30.0, mt = 15.0, mr = 15.0;
  const double pw = W - ml - mr, ph = H - mt - mb;
  const double err_cap = acm::symmetry_period(aspect) / 2.0 * 180.0 / acm::kPi;
  const size_t n = rep.rows.size();
  const auto px = [&](size_t i) { return ml + pw * (n > 1 ? double(i) / (n - 1) : 0.0); };
  const auto py = [&](double unit) { return mt + ph * (1.0 - unit); };

  std::string iou_pts, err_pts;
  for (size_t i = 0; i < n; ++i) {
    const acm::SweepRow& r = rep.rows[i];
    iou_pts += fmt_g(px(i)) + "," + fmt_g(py(r.iou)) + " ";
    const double e = std::min(r.ang_err * 180.0 / acm::kPi / err_cap, 1.0);
    err_pts += fmt_g(px(i)) + "," + fmt_g(py(e)) + " ";
  }
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"360\" "
         "viewBox=\"0 0 720 360\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"360\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + fmt_g(ml) + "\" y1=\"" + fmt_g(mt) + "\" x2=\"" + fmt_g(ml) +
         "\" y2=\"" + fmt_g(H - mb) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt_g(ml) + "\" y1=\"" + fmt_g(H - mb) + "\" x2=\"" + fmt_g(W - mr) +
         "\" y2=\"" + fmt_g(H - mb) + "\" stroke=\"black\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"" + iou_pts +
         "\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"" + err_pts +
         "\"/>\n";
  svg += "<text x=\"" + fmt_g(ml) + "\" y=\"12\" font-size=\"11\">iou (blue), angular error "
         "(red, scale " + fmt_g(err_cap) + " deg)</text>\n";
  svg += "<text x=\"" + fmt_g(W / 2) + "\" y=\"" + fmt_g(H - 8) +
         "\" font-size=\"11\">phi 0..360 deg</text>\n";
  svg += "</svg>\n";
  return svg;
}

ordered_json ablation_to_json(const acm::AblationReport& rep, const acm::FitConfig& base) {
  ordered_json j;
  j["seeds"] = rep.seeds;
  j["base_config"] = fit_config_to_json(base);
  ordered_json cells = ordered_json::array();
  for (const acm::ArmStats& st : rep.cells) {
    ordered_json c;
    c["arm"] = acm::to_string(st.arm);
    c["aspect"] = st.aspect;
    c["lambda_acm"] = st.lambda_acm;
    c["min_iou"] = st.min_iou;
    c["max_err"] = st.max_err;
    c["mean_err"] = st.mean_err;
    c["breakpoint_width"] = st.breakpoint_width;
    c["mean_min_iou"] = acm::mean_of(st.min_iou);
    c["std_min_iou"] = acm::stddev_of(st.min_iou);
    c["mean_max_err"] = acm::mean_of(st.max_err);
    c["mean_mean_err"] = acm::mean_of(st.mean_err);
    c["mean_breakpoint_width"] = acm::mean_of(st.breakpoint_width);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  ordered_json ords = ordered_json::array();
  for (const acm::OrderingCheck& c : rep.orderings)
    ords.push_back(ordered_json{{"name", c.name},
                                {"seeds_holding", c.seeds_holding},
                                {"seeds_total", c.seeds_total},
                                {"holds_on_mean", c.holds_on_mean},
                                {"pass", c.pass}});
  j["orderings"] = std::move(ords);
  return j;
}

int run_encode(const GlobalOpts& g, double theta_deg, int omega) {
  if (omega != 1 && omega != 2 && omega != 4)
    throw std::invalid_argument("--omega must be 1, 2 or 4");
  const double limit = 360.0 / omega;
  if (theta_deg < 0.0 || theta_deg >= limit)
    throw std::invalid_argument("--theta-deg must lie in [0, " + fmt_g(limit) + ") for omega " +
                                std::to_string(omega));
  const double theta = theta_deg * acm::kPi / 180.0;
  const acm::Vec2 e = acm::encode(theta, omega);
  const double back = acm::decode(e.x, e.y, omega) * 180.0 / acm::kPi;
  std::cout << "fx=" << fmt9(e.x) << "\n";
  std::cout << "fy=" << fmt9(e.y) << "\n";
  std::cout << "decoded_deg=" << fmt9(back) << "\n";
  write_manifest(g, "encode",
                 ordered_json{{"theta_deg", theta_deg}, {"omega", omega}});
  return 0;
}

int run_iou(const GlobalOpts& g, const std::string& sa, const std::string& sb) {
  const acm::RotatedBox a = parse_box_arg(sa);
  const acm::RotatedBox b = parse_box_arg(sb);
  const acm::Gaussian2 ga = acm::box_to_gaussian(a);
  const acm::Gaussian2 gb = acm::box_to_gaussian(b);
  std::cout << "skew_iou=" << fmt9(acm::skew_iou(a, b)) << "\n";
  std::cout << "gwd=" << fmt9(acm::gwd(ga, gb)) << "\n";
  std::cout << "kld=" << fmt9(acm::kld(ga, gb)) << "\n";
  std::cout << "kfiou=" << fmt9(acm::kfiou(ga, gb)) << "\n";
  write_manifest(g, "iou", ordered_json{{"box_a", sa}, {"box_b", sb}});
  return 0;
}

struct SweepArgs {
  std::string arm = "acm-fused";
  double aspect = 4.0;
  int steps = 360;
  std::string model_path;
  bool svg = false;
  bool aspect_given = false;
  int epochs = 2000;
  int samples = 512;
};

int run_sweep(const GlobalOpts& g, const SweepArgs& a) {
  acm::SweepReport rep;
  double aspect = a.aspect;
  if (a.arm == "oracle") {
    acm::FitConfig cfg;
    cfg.aspect = aspect;
    rep = acm::sweep_eval(acm::oracle_predictor(aspect), acm::Arm::fused, cfg, a.steps, aspect);
  } else if (!a.model_path.empty()) {
    const acm::TrainedModel m = model_from_json(json::parse(read_file(a.model_path)));
    if (!a.aspect_given) aspect = m.cfg.aspect;
    rep = acm::sweep_eval(m, a.steps, aspect);
  } else {
    acm::FitConfig cfg;
    cfg.arm = acm::arm_from_string(a.arm);
    cfg.aspect = aspect;
    cfg.seed = g.seed;
    cfg.epochs = a.epochs;
    cfg.samples = a.samples;
    const acm::TrainedModel m = acm::train(cfg);
    rep = acm::sweep_eval(m, a.steps, aspect);
  }

  const fs::path dir(g.out_dir);
  write_file(dir / "sweep.csv", sweep_to_csv(rep));
  if (g.format == "json") write_file(dir / "sweep.json", sweep_to_json(rep).dump(2) + "\n");
  if (a.svg) write_file(dir / "sweep.svg", sweep_to_svg(rep, aspect));
  const double r2d = 180.0 / acm::kPi;
  std::cout << "max_err_deg=" << fmt9(rep.max_err * r2d) << " mean_err_deg="
            << fmt9(rep.mean_err * r2d) << " min_iou=" << fmt9(rep.min_iou)
            << " breakpoint_width_deg=" << fmt9(rep.breakpoint_width * r2d) << "\n";
  write_manifest(g, "sweep",
                 ordered_json{{"arm", a.arm},
                              {"aspect", aspect},
                              {"steps", a.steps},
                              {"model_path", a.model_path},
                              {"svg", a.svg},
                              {"epochs", a.epochs},
                              {"samples", a.samples},
                              {"format", g.format}});
  return 0;
}

int run_fit(const GlobalOpts& g, const std::string& config_path, bool seed_given) {
  acm::FitConfig cfg;
  if (!config_path.empty()) cfg = fit_config_from_json(json::parse(read_file(config_path)));
  if (seed_given) cfg.seed = g.seed;

  const acm::TrainedModel m = acm::train(cfg);
  const acm::SweepReport rep = acm::sweep_eval(m, cfg.sweep_steps, cfg.aspect);

  const fs::path dir(g.out_dir);
  write_file(dir / "model.json", model_to_json(m).dump() + "\n");
  std::string curve = "epoch,loss\n";
  for (size_t i = 0; i < m.loss_curve.size(); ++i)
    curve += std::to_string(i) + "," + fmt_g(m.loss_curve[i]) + "\n";
  write_file(dir / "training_curve.csv", curve);
  write_file(dir / "sweep.csv", sweep_to_csv(rep));
  const double r2d = 180.0 / acm::kPi;
  std::cout << "final_loss=" << fmt_g(m.loss_curve.empty() ? 0.0 : m.loss_curve.back())
            << " max_err_deg=" << fmt9(rep.max_err * r2d) << " min_iou=" << fmt9(rep.min_iou)
            << "\n";
  write_manifest(g, "fit",
                 ordered_json{{"config", config_path}, {"resolved", fit_config_to_json(cfg)}});
  return 0;
}

int run_ablate(const GlobalOpts& g, int n_seeds, int epochs, int samples, int sweep_steps) {
  if (n_seeds < 3) throw std::invalid_argument("--seeds must be at least 3");
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < n_seeds; ++i) seeds.push_back(g.seed + i);
  acm::FitConfig base;
  base.epochs = epochs;
  base.samples = samples;
  base.sweep_steps = sweep_steps;
  const acm::AblationReport rep = acm::ablation_suite(seeds, base);
  write_file(fs::path(g.out_dir) / "ablation.json", ablation_to_json(rep, base).dump(2) + "\n");
  for (const acm::OrderingCheck& c : rep.orderings)
    std::cout << c.name << " seeds=" << c.seeds_holding << "/" << c.seeds_total
              << " mean=" << (c.holds_on_mean ? "yes" : "no")
              << " -> " << (c.pass ? "pass" : "fail") << "\n";
  write_manifest(g, "ablate",
                 ordered_json{{"seeds", n_seeds},
                              {"epochs", epochs},
                              {"samples", samples},
                              {"sweep_steps", sweep_steps}});
  return 0;
}

int run_eval(const GlobalOpts& g, const std::string& dets_path, const std::string& gts_dir) {
  if (!fs::is_directory(gts_dir))
    throw std::invalid_argument("ground-truth directory '" + gts_dir + "' does not exist");
  const std::vector<acm::Detection> dets = acm::parse_detections_csv(read_file(dets_path));

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(gts_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<acm::GroundTruth> gts;
  for (const fs::path& f : files) {
    const std::vector<acm::GroundTruth> part = acm::parse_dota(read_file(f), f.stem().string());
    gts.insert(gts.end(), part.begin(), part.end());
  }

  const acm::ApSuiteResult res = acm::ap_suite(dets, gts);
  const std::vector<std::string>& names = acm::dota_class_names();

  std::string csv = "class,ap50,ap75,ap50_95\n";
  std::cout << "class ap50 ap75 ap50:95\n";
  for (const auto& [cls, ap] : res.ap50) {
    const std::string name =
        cls >= 0 && cls < static_cast<int>(names.size()) ? names[cls] : std::to_string(cls);
    csv += name + "," + fmt9(ap) + "," + fmt9(res.ap75.at(cls)) + "," +
           fmt9(res.ap5095.at(cls)) + "\n";
    std::cout << name << " " << fmt9(ap) << " " << fmt9(res.ap75.at(cls)) << " "
              << fmt9(res.ap5095.at(cls)) << "\n";
  }
  csv += "MEAN," + fmt9(res.mean_ap50) + "," + fmt9(res.mean_ap75) + "," +
         fmt9(res.mean_ap5095) + "\n";
  std::cout << "MEAN " << fmt9(res.mean_ap50) << " " << fmt9(res.mean_ap75) << " "
            << fmt9(res.mean_ap5095) << "\n";

  const fs::path dir(g.out_dir);
  if (g.format == "json") {
    ordered_json j;
    ordered_json per = ordered_json::array();
    for (const auto& [cls, ap] : res.ap50)
      per.push_back(ordered_json{{"class", names[cls]},
                                 {"ap50", ap},
                                 {"ap75", res.ap75.at(cls)},
                                 {"ap50_95", res.ap5095.at(cls)}});
    j["per_class"] = std::move(per);
    j["mean_ap50"] = res.mean_ap50;
    j["mean_ap75"] = res.mean_ap75;
    j["mean_ap50_95"] = res.mean_ap5095;
    write_file(dir / "eval.json", j.dump(2) + "\n");
  } else {
    write_file(dir / "eval.csv", csv);
  }
  write_manifest(g, "eval",
                 ordered_json{{"dets", dets_path}, {"gts", gts_dir}, {"format", g.format}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotated-box angle encoding toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--out-dir", g.out_dir, "directory for output files");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  CLI::Option* seed_opt = app.add_option("--seed", g.seed, "random seed");

  double theta_deg = 0.0;
  int omega = 2;
  CLI::App* c_encode = app.add_subcommand("encode", "encode an angle and decode it back");
  c_encode->add_option("--theta-deg", theta_deg, "angle in degrees")->required();
  c_encode->add_option("--omega", omega, "angular frequency (1, 2 or 4)");

  std::string box_a, box_b;
  CLI::App* c_iou = app.add_subcommand("iou", "compare two boxes 'cx,cy,w,h,theta_deg'");
  c_iou->add_option("--box-a", box_a, "first box")->required();
  c_iou->add_option("--box-b", box_b, "second box")->required();

  SweepArgs sa;
  CLI::App* c_sweep = app.add_subcommand("sweep", "rotate an object through 360 degrees");
  CLI::Option* arm_opt =
      c_sweep->add_option("--arm", sa.arm, "oracle|direct|acm-w1|acm-w2|acm-w4|acm-fused");
  arm_opt->check(
      CLI::IsMember({"oracle", "direct", "acm-w1", "acm-w2", "acm-w4", "acm-fused"}));
  CLI::Option* aspect_opt = c_sweep->add_option("--aspect", sa.aspect, "object aspect ratio");
  c_sweep->add_option("--steps", sa.steps, "sweep resolution");
  c_sweep->add_option("--model-path", sa.model_path, "trained model JSON to evaluate");
  c_sweep->add_flag("--svg", sa.svg, "also write an SVG line plot");
  c_sweep->add_option("--epochs", sa.epochs, "training epochs when no model is given");
  c_sweep->add_option("--samples", sa.samples, "training samples when no model is given");

  std::string fit_config;
  CLI::App* c_fit = app.add_subcommand("fit", "train a regressor per config JSON");
  c_fit->add_option("--config", fit_config, "config JSON path (defaults apply if omitted)");

  int ablate_seeds = 3;
  int ablate_epochs = 2000;
  int ablate_samples = 512;
  int ablate_sweep_steps = 360;
  CLI::App* c_ablate = app.add_subcommand("ablate", "run the arm/aspect ablation grid");
  c_ablate->add_option("--seeds", ablate_seeds, "number of seeds (starting at --seed)");
  c_ablate->add_option("--epochs", ablate_epochs, "training epochs per run");
  c_ablate->add_option("--samples", ablate_samples, "training samples per run");
  c_ablate->add_option("--sweep-steps", ablate_sweep_steps, "sweep resolution per run");

  std::string dets_path, gts_dir;
  CLI::App* c_eval = app.add_subcommand("eval", "score detections against DOTA ground truth");
  c_eval->add_option("--dets", dets_path, "detection CSV")->required();
  c_eval->add_option("--gts", gts_dir, "directory of DOTA annotation .txt files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    sa.aspect_given = aspect_opt->count() > 0;
    if (c_encode->parsed()) return run_encode(g, theta_deg, omega);
    if (c_iou->parsed()) return run_iou(g, box_a, box_b);
    if (c_sweep->parsed()) return run_sweep(g, sa);
    if (c_fit->parsed()) return run_fit(g, fit_config, seed_opt->count() > 0);
    if (c_ablate->parsed())
      return run_ablate(g, ablate_seeds, ablate_epochs, ablate_samples, ablate_sweep_steps);
    if (c_eval->parsed()) return run_eval(g, dets_path, gts_dir);
    return 2;
  } catch (const acm::MalformedLine& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
