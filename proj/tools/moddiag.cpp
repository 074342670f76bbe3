// Command-line surface: model loading/validation, gamma computations,
// threshold search, verification suites and report comparison.
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 invalid input.

#include "moddiag/moddiag.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace moddiag;

void emit(const Json &j, const std::string &out_path)
{
	std::string text = j.dump(2) + "\n";
	if (out_path.empty())
	{
		std::cout << text;
		return;
	}
	std::ofstream out(out_path, std::ios::binary);
	if (!out)
		throw IoError("cannot write '" + out_path + "'");
	out << text;
}

Json load_json_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw IoError("cannot open '" + path + "'");
	Json j;
	try
	{
		in >> j;
	}
	catch (const Json::exception &e)
	{
		throw IoError(std::string("parse error in '") + path + "': " + e.what());
	}
	return j;
}

int cmd_model_validate(const std::string &path)
{
	ModelPtr model = load_model_file(path);
	auto violations = validate(*model);
	Json j;
	j["model"] = model->name();
	j["valid"] = violations.empty();
	Json vs = Json::array();
	for (const auto &v : violations)
		vs.push_back(Json{{"check", v.check}, {"detail", v.detail}});
	j["violations"] = std::move(vs);
	std::cout << j.dump(2) << "\n";
	return violations.empty() ? 0 : 1;
}

int cmd_model_builtin_list()
{
	Json j = Json::array();
	j.push_back("point");
	j.push_back("curve:g=<genus>        (g >= 0)");
	j.push_back("abelian:g=<genus>      (g >= 1)");
	j.push_back("k3:rho=<rank>          (rho >= 1)");
	j.push_back("product:<spec>,<spec>");
	j.push_back("cover:g=<g>,h=<h>      (double cover, g >= h)");
	j.push_back("file:<path>");
	std::cout << j.dump(2) << "\n";
	return 0;
}

int cmd_compute_gamma(const std::string &spec, int n, const std::string &alpha_path,
                      const std::string &route, const std::string &out_path)
{
	ModelPtr model = parse_model_spec(spec);
	std::optional<TensorClass> alpha;
	if (!alpha_path.empty())
		alpha = class_from_json(load_json_file(alpha_path), model);
	Json j;
	j["model"] = model->name();
	j["n"] = n;
	j["route"] = route;
	if (route == "projector" || route == "both")
	{
		GammaResult r = alpha ? gamma_map(model, *alpha, n) : modified_diagonal(model, n);
		j["isZero"] = r.is_zero;
		j["result"] = class_to_json(r.result);
	}
	if (route == "expansion" || route == "both")
	{
		if (alpha)
			throw ParameterError("the expansion route computes the modified diagonal only "
			                     "(no --alpha)");
		GammaResult r = expansion_gamma(model, n);
		j["isZero"] = r.is_zero;
		j["expansionResult"] = class_to_json(r.result);
	}
	if (route == "both" && !alpha)
	{
		bool agree = class_from_json(j["result"], model) ==
		             class_from_json(j["expansionResult"], model);
		j["routesAgree"] = agree;
		emit(j, out_path);
		return agree ? 0 : 1;
	}
	emit(j, out_path);
	return 0;
}

int cmd_threshold(const std::string &spec, int max_n, const std::string &out_path)
{
	ModelPtr model = parse_model_spec(spec);
	auto t = vanishing_threshold(model, max_n);
	Json j;
	j["model"] = model->name();
	j["maxN"] = max_n;
	j["dimension"] = model->dimension();
	j["albaneseE"] = albanese_image_dim(model);
	if (t)
		j["threshold"] = *t;
	else
		j["threshold"] = "none up to maxN";
	emit(j, out_path);
	return 0;
}

int cmd_verify(const std::string &suite, const std::vector<std::string> &param_kv,
               const std::string &out_path)
{
	std::map<std::string, std::string> params;
	for (const auto &kv : param_kv)
	{
		auto eq = kv.find('=');
		if (eq == std::string::npos)
			throw ParameterError("--param expects key=value, got '" + kv + "'");
		params[kv.substr(0, eq)] = kv.substr(eq + 1);
	}
	if (suite == "all")
	{
		bool ok = false;
		Json j = run_all_suites(params, &ok);
		emit(j, out_path);
		return ok ? 0 : 1;
	}
	SuiteReport rep = run_suite(suite, params);
	emit(report_to_json(rep), out_path);
	return rep.all_passed() ? 0 : 1;
}

int cmd_report_diff(const std::string &a, const std::string &b)
{
	Json ja = strip_wall_time(load_json_file(a));
	Json jb = strip_wall_time(load_json_file(b));
	if (ja.dump(2) == jb.dump(2))
	{
		std::cout << "identical payloads\n";
		return 0;
	}
	std::cout << "payloads differ\n";
	return 1;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"exact computation and verification engine for modified diagonal classes"};
	app.require_subcommand(1);
	std::size_t term_cap = moddiag::config::term_cap();
	app.add_option("--term-cap", term_cap, "dense-term guardrail (default 10^7)");

	auto *model_cmd = app.add_subcommand("model", "model file operations");
	model_cmd->require_subcommand(1);
	auto *validate_cmd = model_cmd->add_subcommand("validate", "validate a model file");
	std::string validate_path;
	validate_cmd->add_option("file", validate_path, "model JSON file")->required();
	auto *builtin_cmd = model_cmd->add_subcommand("builtin", "builtin model catalogue");
	bool builtin_list = false;
	builtin_cmd->add_flag("--list", builtin_list, "list builtin model specs");

	auto *compute_cmd = app.add_subcommand("compute", "compute classes");
	compute_cmd->require_subcommand(1);
	auto *gamma_cmd = compute_cmd->add_subcommand("gamma", "gamma map / modified diagonal");
	std::string gamma_model, gamma_alpha, gamma_route = "projector", gamma_out;
	int gamma_n = 0;
	gamma_cmd->add_option("--model", gamma_model, "model spec")->required();
	gamma_cmd->add_option("--n", gamma_n, "power n")->required();
	gamma_cmd->add_option("--alpha", gamma_alpha, "input class JSON file (projector route)");
	gamma_cmd->add_option("--route", gamma_route, "projector|expansion|both")
	    ->check(CLI::IsMember({"projector", "expansion", "both"}));
	gamma_cmd->add_option("--out", gamma_out, "output file (default stdout)");

	auto *threshold_cmd = app.add_subcommand("threshold", "vanishing threshold search");
	std::string threshold_model, threshold_out;
	int threshold_max_n = 0;
	threshold_cmd->add_option("--model", threshold_model, "model spec")->required();
	threshold_cmd->add_option("--max-n", threshold_max_n, "largest n to test")->required();
	threshold_cmd->add_option("--out", threshold_out, "output file (default stdout)");

	auto *verify_cmd = app.add_subcommand("verify", "run a verification suite");
	std::string verify_suite, verify_out;
	std::vector<std::string> verify_params;
	verify_cmd->add_option("--suite", verify_suite, "suite name or 'all'")->required();
	verify_cmd->add_option("--param", verify_params, "suite parameter key=value");
	verify_cmd->add_option("--out", verify_out, "output file (default stdout)");

	auto *report_cmd = app.add_subcommand("report", "report operations");
	report_cmd->require_subcommand(1);
	auto *diff_cmd = report_cmd->add_subcommand("diff", "compare two reports");
	std::string diff_a, diff_b;
	diff_cmd->add_option("a", diff_a, "first report")->required();
	diff_cmd->add_option("b", diff_b, "second report")->required();

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		app.exit(e);
		return e.get_exit_code() == 0 ? 0 : 2;
	}

	moddiag::config::term_cap() = term_cap;
	try
	{
		if (validate_cmd->parsed())
			return cmd_model_validate(validate_path);
		if (builtin_cmd->parsed())
			return cmd_model_builtin_list();
		if (gamma_cmd->parsed())
			return cmd_compute_gamma(gamma_model, gamma_n, gamma_alpha, gamma_route, gamma_out);
		if (threshold_cmd->parsed())
			return cmd_threshold(threshold_model, threshold_max_n, threshold_out);
		if (verify_cmd->parsed())
			return cmd_verify(verify_suite, verify_params, verify_out);
		if (diff_cmd->parsed())
			return cmd_report_diff(diff_a, diff_b);
	}
	catch (const moddiag::ParameterError &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	catch (const moddiag::IoError &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	catch (const moddiag::Error &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	std::cerr << "error: no subcommand\n";
	return 2;
}
