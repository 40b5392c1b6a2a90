#include "vesselkit/cli/commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "vesselkit/cli/dataset.hpp"
#include "vesselkit/cli/error.hpp"
#include "vesselkit/cli/image_io.hpp"
#include "vesselkit/cli/methods.hpp"
#include "vesselkit/cli/scene_config.hpp"
#include "vesselkit/eval.hpp"
#include "vesselkit/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace vk::cli {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
  if (!out) throw InputError("cannot write " + path.string());
}

// Options shared by every command that runs an enhancer.
struct MethodOptions {
  int dmax = BowlerHatParams{}.max_diameter;
  int ntheta = BowlerHatParams{}.orientations;
  int dstep = BowlerHatParams{}.diameter_step;
  int threads = BowlerHatParams{}.threads;
  std::vector<double> scales = HessianParams{}.scales;
  double gamma = HessianParams{}.gamma;
  double beta = HessianParams{}.beta;
  double alpha = HessianParams{}.alpha;
  double tau = HessianParams{}.tau;
  double clahe_clip = ClaheParams{}.clip_limit;
  int clahe_tiles = ClaheParams{}.tiles_x;
  int line_window = LineDetectorParams{}.window;
  int iuwt_levels = IuwtParams{}.levels;
  std::vector<int> iuwt_sum = IuwtParams{}.summed_levels;

  MethodParams params() const {
    MethodParams p;
    p.bowler.max_diameter = dmax;
    p.bowler.orientations = ntheta;
    p.bowler.diameter_step = dstep;
    p.bowler.threads = threads;
    p.hessian.scales = scales;
    p.hessian.gamma = gamma;
    p.hessian.beta = beta;
    p.hessian.alpha = alpha;
    p.hessian.tau = tau;
    p.clahe.clip_limit = clahe_clip;
    p.clahe.tiles_x = p.clahe.tiles_y = clahe_tiles;
    p.zana_klein.line_length = dmax;
    p.zana_klein.orientations = ntheta;
    p.line.orientations = ntheta;
    p.line.window = line_window;
    p.line.lengths.clear();
    for (int l = 1; l <= line_window; l += 2) p.line.lengths.push_back(l);
    p.iuwt.levels = iuwt_levels;
    p.iuwt.summed_levels = iuwt_sum;
    return p;
  }
};

void add_method_options(CLI::App* app, MethodOptions& o) {
  app->add_option("--dmax", o.dmax, "Bowler-hat maximum diameter (also Zana-Klein line length)")
      ->capture_default_str();
  app->add_option("--ntheta", o.ntheta, "Number of line orientations")->capture_default_str();
  app->add_option("--dstep", o.dstep, "Bowler-hat diameter step")->capture_default_str();
  app->add_option("--threads", o.threads, "Worker threads for the bowler-hat (0 = all cores)")
      ->capture_default_str();
  app->add_option("--scales", o.scales, "Hessian scales, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  app->add_option("--gamma", o.gamma, "Hessian scale normalization exponent")->capture_default_str();
  app->add_option("--beta", o.beta, "Frangi blob sensitivity")->capture_default_str();
  app->add_option("--alpha", o.alpha, "Neuriteness Hessian modification")->capture_default_str();
  app->add_option("--tau", o.tau, "Volume-ratio cut-off")->capture_default_str();
  app->add_option("--clahe-clip", o.clahe_clip, "CLAHE clip limit")->capture_default_str();
  app->add_option("--clahe-tiles", o.clahe_tiles, "CLAHE tiles per axis")->capture_default_str();
  app->add_option("--line-window", o.line_window, "Line detector window (odd)")
      ->capture_default_str();
  app->add_option("--iuwt-levels", o.iuwt_levels, "IUWT decomposition depth")
      ->capture_default_str();
  app->add_option("--iuwt-sum", o.iuwt_sum, "IUWT levels summed, comma separated")
      ->delimiter(',')
      ->capture_default_str();
}

struct InputOptions {
  std::string polarity = "auto";
  std::string channel = "green";
};

void add_input_options(CLI::App* app, InputOptions& o) {
  app->add_option("--polarity", o.polarity, "Vessel polarity: bright, dark or auto")
      ->capture_default_str();
  app->add_option("--channel", o.channel, "Colour reduction: green or luma")->capture_default_str();
}

void add_config(CLI::App* app, std::string& path) {
  app->add_option("--config", path, "Read options from a key = value file (flags take precedence)");
}

// CLI11 only reads config files on the root app, so subcommands apply theirs
// here, after the command line has been parsed.
void apply_config(CLI::App* app, const std::string& path) {
  if (path.empty()) return;
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == app->get_name())) continue;
    CLI::Option* opt = app->get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config")
      throw InputError(path + ": unknown key '" + item.fullname() + "'");
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

SceneSpec scene_from(const std::string& preset, const std::string& scene_file) {
  if (!scene_file.empty()) return load_scene_config(scene_file);
  try {
    return preset_scene(preset);
  } catch (const std::invalid_argument& e) {
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw InputError(std::string(e.what()) + " (presets: " + names + ")");
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

struct EnhanceArgs {
  std::string config;
  std::string input;
  std::string output;
  std::string method = "bowlerhat";
  std::string fov;
  InputOptions in;
  MethodOptions m;
};

void run_enhance(const EnhanceArgs& a) {
  const MethodId id = parse_method(a.method);
  std::optional<BinaryMask> fov;
  if (!a.fov.empty()) fov = load_mask(a.fov);
  const Raster img = load_image(a.input, parse_polarity_mode(a.in.polarity),
                                parse_channel(a.in.channel), fov ? &*fov : nullptr);
  const auto start = std::chrono::steady_clock::now();
  const Raster out = enhance(img, id, a.m.params());
  const double elapsed = seconds_since(start);
  save_image16(out, a.output);
  std::cout << method_name(id) << ": " << img.width() << "x" << img.height() << " in "
            << num(std::round(elapsed * 1000.0) / 1000.0) << " s -> " << a.output << "\n";
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string config;
  std::string root;
  std::string layout = "drive";
  std::string images;
  std::string truth;
  std::string fov_dir;
  std::vector<std::string> methods{"bowlerhat"};
  std::string out;
  int thresholds = 256;
  int window = 25;
  double margin = 0.03;
  InputOptions in;
  MethodOptions m;
};

void write_roc_csv(const fs::path& path, const RocCurve& roc) {
  std::string text = "threshold,fpr,tpr\n";
  for (const auto& p : roc.points) text += num(p.threshold) + "," + num(p.fpr) + "," + num(p.tpr) + "\n";
  write_text(path, text);
}

json counts_json(const ConfusionCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
}

json rates_json(const Rates& r) { return {{"se", opt(r.se)}, {"sp", opt(r.sp)}, {"acc", opt(r.acc)}}; }

struct Mean {
  double sum = 0.0;
  int count = 0;
  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++count;
    }
  }
  json value() const { return count > 0 ? json(sum / count) : json(nullptr); }
};

void run_eval(const EvalArgs& a) {
  if (a.thresholds < 2) throw InputError("--thresholds must be at least 2");
  DatasetLayout layout = make_layout(parse_layout_kind(a.layout), a.root);
  if (!a.images.empty()) layout.images = a.images;
  if (!a.truth.empty()) layout.truths = a.truth;
  if (!a.fov_dir.empty()) layout.fovs = a.fov_dir;
  const auto entries = discover(layout);

  std::vector<MethodId> ids;
  for (const auto& name : a.methods) ids.push_back(parse_method(name));
  if (ids.empty()) throw InputError("no methods requested");
  const MethodParams params = a.m.params();
  const PolarityMode polarity = parse_polarity_mode(a.in.polarity);
  const Channel channel = parse_channel(a.in.channel);
  const fs::path out_dir = a.out;

  struct MethodReport {
    json images = json::array();
    ConfusionCounts pooled;
    Mean auc_fov, auc_all, se, sp, acc;
  };
  std::vector<MethodReport> reports(ids.size());
  json skipped = json::array();
  int evaluated = 0;

  for (const auto& entry : entries) {
    if (!entry.truth) {
      std::cerr << "warning: " << entry.key << ": no ground truth, skipped\n";
      skipped.push_back({{"id", entry.key}, {"reason", "missing ground truth"}});
      continue;
    }
    std::optional<BinaryMask> fov;
    if (entry.fov) fov = load_mask(*entry.fov);
    const BinaryMask truth = load_mask(*entry.truth);
    const Raster img = load_image(entry.image, polarity, channel, fov ? &*fov : nullptr);
    if (!truth.same_shape(img) || (fov && !fov->same_shape(img))) {
      std::cerr << "warning: " << entry.key << ": annotation size differs from image, skipped\n";
      skipped.push_back({{"id", entry.key}, {"reason", "annotation size mismatch"}});
      continue;
    }
    ++evaluated;
    const BinaryMask* fov_ptr = fov ? &*fov : nullptr;
    for (std::size_t m = 0; m < ids.size(); ++m) {
      const Raster enhanced = enhance(img, ids[m], params);
      const RocCurve roc_all = roc_auc(enhanced, truth, nullptr, a.thresholds);
      const fs::path roc_dir = out_dir / "roc" / method_name(ids[m]);
      write_roc_csv(roc_dir / (entry.key + "_all.csv"), roc_all);
      std::optional<double> auc_fov;
      if (fov_ptr != nullptr) {
        const RocCurve roc_fov = roc_auc(enhanced, truth, fov_ptr, a.thresholds);
        write_roc_csv(roc_dir / (entry.key + "_fov.csv"), roc_fov);
        auc_fov = roc_fov.auc;
      }
      const BinaryMask seg = local_threshold(enhanced, a.window, -a.margin);
      const ConfusionCounts counts = confusion(seg, truth, fov_ptr);
      const Rates rates = se_sp_acc(counts);

      MethodReport& r = reports[m];
      r.pooled += counts;
      r.auc_fov.add(auc_fov);
      r.auc_all.add(roc_all.auc);
      r.se.add(rates.se);
      r.sp.add(rates.sp);
      r.acc.add(rates.acc);
      json row = rates_json(rates);
      row["id"] = entry.key;
      row["auc_fov"] = opt(auc_fov);
      row["auc_all"] = opt(roc_all.auc);
      row["counts"] = counts_json(counts);
      r.images.push_back(std::move(row));
    }
    std::cout << entry.key << ": done\n";
  }
  if (evaluated == 0) throw InputError("no image could be evaluated (all skipped)");

  json methods = json::array();
  for (std::size_t m = 0; m < ids.size(); ++m) {
    const MethodReport& r = reports[m];
    json pooled = rates_json(se_sp_acc(r.pooled));
    pooled["counts"] = counts_json(r.pooled);
    methods.push_back({{"method", method_name(ids[m])},
                       {"images", r.images},
                       {"pooled", pooled},
                       {"mean",
                        {{"auc_fov", r.auc_fov.value()},
                         {"auc_all", r.auc_all.value()},
                         {"se", r.se.value()},
                         {"sp", r.sp.value()},
                         {"acc", r.acc.value()}}}});
  }
  const json summary = {
      {"layout", layout_kind_name(layout.kind)},
      {"root", layout.root.string()},
      {"evaluated", evaluated},
      {"thresholds", a.thresholds},
      {"segmentation",
       {{"thresholder", "local mean (substituted)"}, {"window", a.window}, {"margin", a.margin}}},
      {"methods", methods},
      {"skipped", skipped},
  };
  write_text(out_dir / "summary.json", summary.dump(2) + "\n");
  std::cout << "evaluated " << evaluated << " image(s), skipped " << skipped.size() << "; summary -> "
            << (out_dir / "summary.json").string() << "\n";
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string config;
  std::string preset = "vessel";
  std::string scene;
  std::string output;
  std::string noise;
  std::optional<double> target_psnr;
  std::optional<double> amount;
  std::uint64_t seed = 0;
  double illumination = 0.0;
  double illumination_dir = 0.0;
};

fs::path sibling(const fs::path& image, const std::string& suffix, const std::string& ext) {
  return image.parent_path() / (image.stem().string() + suffix + ext);
}

void run_synth(const SynthArgs& a) {
  const SceneSpec spec = scene_from(a.preset, a.scene);
  Scene scene;
  try {
    scene = render(spec);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Raster image = uneven_illumination(scene.image, a.illumination_dir, a.illumination);

  json noise = nullptr;
  if (!a.noise.empty() || a.target_psnr || a.amount) {
    if (a.target_psnr && a.amount) throw InputError("--target-psnr and --amount are exclusive");
    if (!a.target_psnr && !a.amount) throw InputError("noise needs --target-psnr or --amount");
    const NoiseKind kind = parse_noise_kind(a.noise.empty() ? "gaussian" : a.noise);
    const Raster clean = image;
    double amount = 0.0;
    if (a.target_psnr) {
      TargetedNoise t = noise_for_target_psnr(clean, kind, *a.target_psnr, a.seed);
      image = std::move(t.image);
      amount = t.amount;
    } else {
      amount = *a.amount;
      image = apply_noise(clean, {kind, amount, a.seed});
    }
    noise = {{"kind", noise_kind_name(kind)},
             {"amount", amount},
             {"seed", a.seed},
             {"target_db", a.target_psnr ? json(*a.target_psnr) : json(nullptr)},
             {"achieved_db", num(psnr(clean, image))}};
  }

  const fs::path out = a.output;
  save_image16(image, out);
  save_mask(scene.mask, sibling(out, "_mask", ".png"));
  const json sidecar = {
      {"scene", format_scene_config(spec)},
      {"preset", a.scene.empty() ? json(a.preset) : json(nullptr)},
      {"illumination", {{"strength", a.illumination}, {"direction_deg", a.illumination_dir}}},
      {"noise", noise},
  };
  write_text(sibling(out, "", ".json"), sidecar.dump(2) + "\n");
  std::cout << "wrote " << out.string() << " and " << sibling(out, "_mask", ".png").string();
  if (!noise.is_null()) std::cout << " (achieved " << noise["achieved_db"].get<std::string>() << " dB)";
  std::cout << "\n";
}

// ---------------------------------------------------------------------------

struct ProfileArgs {
  std::string input;
  std::string output;
  int row = -1;
};

void run_profile(const ProfileArgs& a) {
  const Raster img = read_intensity(a.input, Channel::Luma);
  const int row = a.row < 0 ? img.height() / 2 : a.row;
  std::vector<double> values;
  try {
    values = extract_profile(img, row);
  } catch (const std::out_of_range&) {
    throw InputError("row " + std::to_string(row) + " outside image of height " +
                     std::to_string(img.height()));
  }
  std::string text = "x,value\n";
  for (std::size_t x = 0; x < values.size(); ++x) text += std::to_string(x) + "," + num(values[x]) + "\n";
  write_text(a.output, text);
  std::cout << "profile of row " << row << " (" << values.size() << " samples) -> " << a.output << "\n";
}

// ---------------------------------------------------------------------------

struct NoiseCurveArgs {
  std::string config;
  std::string preset = "vessel";
  std::string scene;
  std::string method = "bowlerhat";
  std::string noise = "gaussian";
  std::vector<double> targets{25, 20, 15};
  std::uint64_t seed = 0;
  int thresholds = 256;
  std::string output;
  MethodOptions m;
};

void run_noise_curve(const NoiseCurveArgs& a) {
  const MethodId id = parse_method(a.method);
  const NoiseKind kind = parse_noise_kind(a.noise);
  const Scene scene = render(scene_from(a.preset, a.scene));
  const MethodParams params = a.m.params();
  std::vector<double> targets{std::numeric_limits<double>::infinity()};
  targets.insert(targets.end(), a.targets.begin(), a.targets.end());
  const auto rows = auc_vs_noise_curve(
      scene, [&](const Raster& img) { return enhance(img, id, params); }, kind, targets, a.seed,
      a.thresholds);
  std::string text = "target_db,achieved_db,auc\n";
  for (const auto& r : rows) {
    text += num(r.target_db) + "," + num(r.achieved_db) + "," + (r.auc ? num(*r.auc) : "") + "\n";
  }
  write_text(a.output, text);
  std::cout << text;
}

int dispatch(CLI::App& app, int argc, const char* const* argv) {
  EnhanceArgs enhance_args;
  EvalArgs eval_args;
  SynthArgs synth_args;
  ProfileArgs profile_args;
  NoiseCurveArgs curve_args;

  auto* enh = app.add_subcommand("enhance", "Enhance one image and write a 16-bit PNG");
  add_config(enh, enhance_args.config);
  enh->add_option("input", enhance_args.input, "Input image")->required();
  enh->add_option("--out,-o", enhance_args.output, "Output PNG")->required();
  enh->add_option("--method", enhance_args.method, "Enhancement method")->capture_default_str();
  enh->add_option("--fov", enhance_args.fov, "FOV mask used by --polarity auto");
  add_input_options(enh, enhance_args.in);
  add_method_options(enh, enhance_args.m);
  enh->callback([&, enh] {
    apply_config(enh, enhance_args.config);
    run_enhance(enhance_args);
  });

  auto* ev = app.add_subcommand("eval-dataset", "Evaluate methods on a retinal dataset");
  add_config(ev, eval_args.config);
  ev->add_option("--root", eval_args.root, "Dataset root")->required();
  ev->add_option("--layout", eval_args.layout, "drive, stare, hrf or flat")->capture_default_str();
  ev->add_option("--images", eval_args.images, "Override the image directory");
  ev->add_option("--truth", eval_args.truth, "Override the annotation directory");
  ev->add_option("--fov-dir", eval_args.fov_dir, "Override the FOV mask directory");
  ev->add_option("--methods,--method", eval_args.methods, "Methods, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  ev->add_option("--out,-o", eval_args.out, "Output directory")->required();
  ev->add_option("--thresholds", eval_args.thresholds, "ROC thresholds")->capture_default_str();
  ev->add_option("--window", eval_args.window, "Local threshold window (odd)")->capture_default_str();
  ev->add_option("--margin", eval_args.margin,
                 "Vessel pixels must exceed the local mean by this much")
      ->capture_default_str();
  add_input_options(ev, eval_args.in);
  add_method_options(ev, eval_args.m);
  ev->callback([&, ev] {
    apply_config(ev, eval_args.config);
    run_eval(eval_args);
  });

  auto* syn = app.add_subcommand("synth", "Render a synthetic scene with optional degradation");
  add_config(syn, synth_args.config);
  syn->add_option("--preset", synth_args.preset, "Named scene")->capture_default_str();
  syn->add_option("--scene", synth_args.scene, "Scene description file (overrides --preset)");
  syn->add_option("--out,-o", synth_args.output, "Output PNG; mask and JSON go alongside")
      ->required();
  syn->add_option("--noise", synth_args.noise, "gaussian, speckle or saltpepper");
  syn->add_option("--target-psnr", synth_args.target_psnr, "Noise level as a PSNR target (dB)");
  syn->add_option("--amount", synth_args.amount, "Noise sigma or salt-and-pepper density");
  syn->add_option("--seed", synth_args.seed, "Noise seed")->capture_default_str();
  syn->add_option("--illumination", synth_args.illumination, "Ramp strength in [0,1)")
      ->capture_default_str();
  syn->add_option("--illumination-dir", synth_args.illumination_dir, "Ramp direction, degrees")
      ->capture_default_str();
  syn->callback([&, syn] {
    apply_config(syn, synth_args.config);
    run_synth(synth_args);
  });

  auto* prof = app.add_subcommand("profile", "Write one image row as CSV (x,value)");
  prof->add_option("input", profile_args.input, "Enhanced image")->required();
  prof->add_option("--row", profile_args.row, "Row index (default: middle row)");
  prof->add_option("--out,-o", profile_args.output, "Output CSV")->required();
  prof->callback([&] { run_profile(profile_args); });

  auto* curve = app.add_subcommand("noise-curve", "AUC against noise level on a synthetic scene");
  add_config(curve, curve_args.config);
  curve->add_option("--preset", curve_args.preset, "Named scene")->capture_default_str();
  curve->add_option("--scene", curve_args.scene, "Scene description file");
  curve->add_option("--method", curve_args.method, "Enhancement method")->capture_default_str();
  curve->add_option("--noise", curve_args.noise, "gaussian, speckle or saltpepper")
      ->capture_default_str();
  curve->add_option("--target-psnr,--targets", curve_args.targets, "PSNR targets, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  curve->add_option("--seed", curve_args.seed, "Noise seed")->capture_default_str();
  curve->add_option("--thresholds", curve_args.thresholds, "ROC thresholds")->capture_default_str();
  curve->add_option("--out,-o", curve_args.output, "Output CSV")->required();
  add_method_options(curve, curve_args.m);
  curve->callback([&, curve] {
    apply_config(curve, curve_args.config);
    run_noise_curve(curve_args);
  });

  app.require_subcommand(1);
  app.parse(argc, argv);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Vessel enhancement toolkit", "vesselkit"};
  try {
    return dispatch(app, argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace vk::cli
