#pragma once

#include "moddiag/double_cover.hpp"
#include "moddiag/error.hpp"
#include "moddiag/model.hpp"
#include "moddiag/tensor.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace moddiag {

using Json = nlohmann::ordered_json;

namespace io_detail {

inline SparseVec parse_combo(const Json &j, const Model *resolve, const Json &basis_ids)
{
	SparseVec v;
	for (const auto &entry : j)
	{
		if (!entry.is_array() || entry.size() != 2)
			throw IoError("combination entries must be [id, rational] pairs");
		std::string id = entry[0].get<std::string>();
		int idx;
		if (resolve)
			idx = resolve->index_checked(id);
		else
		{
			idx = -1;
			for (std::size_t k = 0; k < basis_ids.size(); ++k)
				if (basis_ids[k].get<std::string>() == id)
				{
					idx = static_cast<int>(k);
					break;
				}
			if (idx < 0)
				throw IoError("unknown basis id '" + id + "'");
		}
		v.emplace_back(idx, parse_rational(entry[1].get<std::string>()));
	}
	sv_normalize(v);
	return v;
}

inline Json combo_to_json(const SparseVec &v, const Model &m)
{
	Json out = Json::array();
	for (const auto &[i, c] : v)
		out.push_back(Json::array({m.id(i), format_rational(c)}));
	return out;
}

} // namespace io_detail

/// Reads a model from its JSON description. Unspecified products are zero;
/// the mirror of each given ordered pair is completed with the Koszul sign.
inline ModelPtr model_from_json(const Json &j)
{
	if (!j.is_object())
		throw IoError("model file must hold a JSON object");
	ModelData d;
	d.kind = ModelKind::Custom;
	try
	{
		d.name = j.at("name").get<std::string>();
		d.dimension = j.at("dimension").get<int>();
		Json ids = Json::array();
		for (const auto &b : j.at("basis"))
		{
			d.basis.push_back({b.at("id").get<std::string>(), b.at("degree").get<int>()});
			ids.push_back(b.at("id").get<std::string>());
		}
		auto index_of = [&](const std::string &id) {
			for (std::size_t k = 0; k < d.basis.size(); ++k)
				if (d.basis[k].id == id)
					return static_cast<int>(k);
			throw IoError("unknown basis id '" + id + "'");
		};
		if (j.contains("products"))
			for (const auto &p : j.at("products"))
			{
				if (!p.is_array() || p.size() != 3)
					throw IoError("products entries must be [left, right, combination]");
				int li = index_of(p[0].get<std::string>());
				int ri = index_of(p[1].get<std::string>());
				d.products[{li, ri}] = io_detail::parse_combo(p[2], nullptr, ids);
			}
		if (j.contains("trace"))
			for (const auto &t : j.at("trace"))
			{
				if (!t.is_array() || t.size() != 2)
					throw IoError("trace entries must be [id, rational]");
				d.trace[index_of(t[0].get<std::string>())] =
				    parse_rational(t[1].get<std::string>());
			}
		if (j.contains("involution"))
		{
			std::vector<SparseVec> inv(d.basis.size());
			for (const auto &row : j.at("involution"))
			{
				if (!row.is_array() || row.size() != 2)
					throw IoError("involution entries must be [id, combination]");
				int i = index_of(row[0].get<std::string>());
				inv[static_cast<std::size_t>(i)] = io_detail::parse_combo(row[1], nullptr, ids);
			}
			d.involution = std::move(inv);
		}
		if (j.contains("albanese_e"))
			d.albanese_e = j.at("albanese_e").get<int>();
	}
	catch (const Json::exception &e)
	{
		throw IoError(std::string("malformed model file: ") + e.what());
	}
	return Model::create(std::move(d));
}

inline Json model_to_json(const Model &m)
{
	Json j;
	j["name"] = m.name();
	j["dimension"] = m.dimension();
	Json basis = Json::array();
	for (int i = 0; i < m.size(); ++i)
		basis.push_back(Json{{"id", m.id(i)}, {"degree", m.degree(i)}});
	j["basis"] = std::move(basis);
	Json products = Json::array();
	for (int i = 0; i < m.size(); ++i)
		for (int k = 0; k < m.size(); ++k)
			if (!m.product(i, k).empty())
				products.push_back(Json::array(
				    {m.id(i), m.id(k), io_detail::combo_to_json(m.product(i, k), m)}));
	j["products"] = std::move(products);
	Json trace = Json::array();
	for (int i = 0; i < m.size(); ++i)
		if (m.trace(i) != 0)
			trace.push_back(Json::array({m.id(i), format_rational(m.trace(i))}));
	j["trace"] = std::move(trace);
	if (m.has_involution())
	{
		Json inv = Json::array();
		for (int i = 0; i < m.size(); ++i)
			inv.push_back(
			    Json::array({m.id(i), io_detail::combo_to_json(m.involution().apply(i), m)}));
		j["involution"] = std::move(inv);
	}
	if (m.albanese_override())
		j["albanese_e"] = *m.albanese_override();
	return j;
}

inline ModelPtr load_model_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw IoError("cannot open model file '" + path + "'");
	Json j;
	try
	{
		in >> j;
	}
	catch (const Json::exception &e)
	{
		throw IoError(std::string("model file parse error: ") + e.what());
	}
	return model_from_json(j);
}

/// Sparse classes as [[basis-id tuple], "p/q"] lists in canonical term order.
inline Json class_to_json(const TensorClass &t)
{
	Json j;
	j["model"] = t.model()->name();
	j["power"] = t.power();
	Json terms = Json::array();
	for (const auto &[tuple, c] : t.terms())
	{
		Json ids = Json::array();
		for (int i : tuple)
			ids.push_back(t.model()->id(i));
		terms.push_back(Json::array({std::move(ids), format_rational(c)}));
	}
	j["terms"] = std::move(terms);
	return j;
}

inline TensorClass class_from_json(const Json &j, const ModelPtr &model)
{
	try
	{
		int power = j.at("power").get<int>();
		TensorClass t(model, power);
		for (const auto &entry : j.at("terms"))
		{
			if (!entry.is_array() || entry.size() != 2)
				throw IoError("class terms must be [[ids], rational] pairs");
			TensorClass::Tuple tuple;
			for (const auto &id : entry[0])
				tuple.push_back(model->index_checked(id.get<std::string>()));
			if (static_cast<int>(tuple.size()) != power)
				throw IoError("class term tuple length does not match the power");
			t.add_term(tuple, parse_rational(entry[1].get<std::string>()));
		}
		return t;
	}
	catch (const Json::exception &e)
	{
		throw IoError(std::string("malformed class file: ") + e.what());
	}
}

/// Model spec strings: curve:g=2, abelian:g=2, k3:rho=4,
/// product:curve:g=1,curve:g=1, cover:g=2,h=1 (the cover space), point,
/// file:<path>.
inline ModelPtr parse_model_spec(const std::string &spec);

inline CoverModel parse_cover_spec(const std::string &spec)
{
	if (spec.rfind("cover:", 0) != 0)
		throw ParameterError("cover spec must start with 'cover:'");
	std::string rest = spec.substr(6);
	int g = -1, h = -1;
	std::size_t pos = 0;
	while (pos < rest.size())
	{
		auto comma = rest.find(',', pos);
		std::string part = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
		auto eq = part.find('=');
		if (eq == std::string::npos)
			throw ParameterError("cover spec parts must look like g=2,h=1");
		std::string key = part.substr(0, eq);
		int value = std::stoi(part.substr(eq + 1));
		if (key == "g")
			g = value;
		else if (key == "h")
			h = value;
		else
			throw ParameterError("unknown cover parameter '" + key + "'");
		if (comma == std::string::npos)
			break;
		pos = comma + 1;
	}
	if (g < 0 || h < 0)
		throw ParameterError("cover spec needs both g and h");
	return build_curve_cover(g, h);
}

inline ModelPtr parse_model_spec(const std::string &spec)
{
	auto param_after = [&](const std::string &prefix, const std::string &key) {
		std::string rest = spec.substr(prefix.size());
		if (rest.rfind(key + "=", 0) != 0)
			throw ParameterError("model spec '" + spec + "' must look like " + prefix + key +
			                     "=<value>");
		return std::stoi(rest.substr(key.size() + 1));
	};
	if (spec == "point")
		return Model::point();
	if (spec.rfind("curve:", 0) == 0)
		return Model::curve(param_after("curve:", "g"));
	if (spec.rfind("abelian:", 0) == 0)
		return Model::abelian(param_after("abelian:", "g"));
	if (spec.rfind("k3:", 0) == 0)
		return Model::k3(param_after("k3:", "rho"));
	if (spec.rfind("cover:", 0) == 0)
		return parse_cover_spec(spec).cover_space;
	if (spec.rfind("file:", 0) == 0)
		return load_model_file(spec.substr(5));
	if (spec.rfind("product:", 0) == 0)
	{
		std::string rest = spec.substr(8);
		// try each comma as the separator between the two factor specs
		for (std::size_t pos = rest.find(','); pos != std::string::npos;
		     pos = rest.find(',', pos + 1))
		{
			try
			{
				ModelPtr a = parse_model_spec(rest.substr(0, pos));
				ModelPtr b = parse_model_spec(rest.substr(pos + 1));
				return Model::product(a, b);
			}
			catch (const Error &)
			{
				continue;
			}
		}
		throw ParameterError("cannot split product spec '" + spec + "'");
	}
	throw ParameterError("unknown model spec '" + spec + "'");
}

} // namespace moddiag
