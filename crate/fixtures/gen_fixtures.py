#!/usr/bin/env python3
"""Generates the bundled JSONL fixture corpora. Run from fixtures/."""
import json

def ing(name, value, unit="mg"):
    return {"name": name, "dosage_value": value, "dosage_unit": unit}

def product(name, ingredients, form, cls, classification, atc, status, auth, date, holder, addr):
    return {
        "medicine_name": name,
        "active_ingredients": ingredients,
        "pharmaceutical_form": form,
        "therapeutic_class": cls,
        "classification": classification,
        "atc_code": atc,
        "status": status,
        "authorisation_number": auth,
        "authorisation_date": date,
        "authorisation_holder": holder,
        "holder_address": addr,
    }

MMA = [
    product("Panadol 500mg Tablets", [ing("Paracetamol", 500)], "tablet",
            "Analgesics", "otc", "N02BE01", "authorised", "MA001/01", "2011-04-18",
            "Haleon UK Trading Limited", "Weybridge, United Kingdom"),
    # duplicate authorisation number of the record above
    product("Panadol 500mg Film-coated Tablets", [ing("Paracetamol", 500)], "tablet",
            "Analgesics", "otc", "N02BE01", "authorised", "MA001/01", "2012-02-02",
            "Haleon UK Trading Limited", "Weybridge, United Kingdom"),
    product("Calpol Infant Suspension", [ing("Paracetamol", 120)], "oral suspension",
            "Analgesics", "otc", "N02BE01", "authorised", "MA002/01", "2013-09-30",
            "McNeil Products Limited", "Maidenhead, United Kingdom"),
    product("Hedex 500mg Caplets", [ing("Paracetamol", 500)], "caplet",
            "Analgesics", "otc", "N02BE01", "authorised", "MA003/01", "2010-06-11",
            "Haleon UK Trading Limited", "Weybridge, United Kingdom"),
    product("Paracetamol MaltaPharm 500mg Tablets", [ing("Paracetamol", 500)], "tablet",
            "Analgesics", "otc", "N02BE01", "authorised", "MA004/01", "2018-01-22",
            "MaltaPharm Limited", "Birkirkara, Malta"),
    product("Zyrtec 10mg tablets", [ing("Cetirizine hydrochloride", 10)], "tablet",
            "Antihistamines", "otc", "R06AE07", "authorised", "MA090/01", "2009-03-05",
            "UCB Pharma S.A.", "Brussels, Belgium"),
    product("Esomeprazole Magnesium 20mg Gastro-resistant Tablets",
            [ing("Esomeprazole magnesium", 20)], "tablet",
            "Proton pump inhibitors", "pom", "A02BC05", "authorised", "MA091/01", "2016-10-17",
            "MaltaPharm Limited", "Birkirkara, Malta"),
    product("Augmentin 500mg/125mg Tablets",
            [ing("Amoxicillin", 500), ing("Clavulanic acid", 125)], "tablet",
            "Penicillins", "pom", "J01CR02", "authorised", "MA092/01", "2008-05-02",
            "GlaxoSmithKline (Ireland) Limited", "Dublin, Ireland"),
    product("Adrenaline Injection BP 1mg/ml", [ing("Adrenaline", 1)], "injection",
            "Sympathomimetics", "pom", "C01CA24", "authorised", "MA093/01", "2007-11-28",
            "Aurum Pharmaceuticals Limited", "Romford, United Kingdom"),
    product("Marevan 3mg Tablets", [ing("Warfarin sodium", 3)], "tablet",
            "Anticoagulants", "pom", "B01AA03", "authorised", "MA094/01", "2006-02-14",
            "Orion Corporation", "Espoo, Finland"),
    product("Istin 5mg Tablets", [ing("Amlodipine", 5)], "tablet",
            "Calcium-channel blockers", "pom", "C08CA01", "authorised", "MA095/01", "2011-08-09",
            "Upjohn UK Limited", "Sandwich, United Kingdom"),
    product("Ativan 1mg Tablets", [ing("Lorazepam", 1)], "tablet",
            "Benzodiazepines", "pom", "N05BA06", "authorised", "MA096/01", "2012-04-03",
            "Pfizer Limited", "Sandwich, United Kingdom"),
    product("Zithromax 250mg Capsules", [ing("Azithromycin", 250)], "capsule",
            "Macrolides", "pom", "J01FA10", "authorised", "MA097/01", "2014-07-21",
            "Pfizer Limited", "Sandwich, United Kingdom"),
    product("Lanoxin 250mcg Tablets", [ing("Digoxin", 250, "mcg")], "tablet",
            "Cardiac glycosides", "pom", "C01AA05", "authorised", "MA098/01", "2005-12-01",
            "Aspen Pharma Trading Limited", "Dublin, Ireland"),
    # withdrawn product
    product("Distalgesic Tablets",
            [ing("Dextropropoxyphene", 32.5), ing("Paracetamol", 325)], "tablet",
            "Analgesics", "pom", "N02AC54", "withdrawn", "MA099/01", "1998-03-16",
            "Eli Lilly and Company Limited", "Basingstoke, United Kingdom"),
    product("Zestril 10mg Tablets", [ing("Lisinopril", 10)], "tablet",
            "ACE inhibitors", "pom", "C09AA03", "authorised", "MA100/01", "2010-09-27",
            "Atnahs Pharma UK Limited", "Basildon, United Kingdom"),
    product("Tritace 5mg Tablets", [ing("Ramipril", 5)], "tablet",
            "ACE inhibitors", "pom", "C09AA05", "authorised", "MA101/01", "2009-06-15",
            "Sanofi", "Paris, France"),
    product("Innovace 10mg Tablets", [ing("Enalapril maleate", 10)], "tablet",
            "ACE inhibitors", "pom", "C09AA02", "authorised", "MA102/01", "2008-02-20",
            "Organon Pharma (UK) Limited", "London, United Kingdom"),
    product("Coversyl 4mg Tablets", [ing("Perindopril", 4)], "tablet",
            "ACE inhibitors", "pom", "C09AA04", "authorised", "MA103/01", "2013-05-08",
            "Les Laboratoires Servier", "Suresnes, France"),
    product("Capoten 25mg Tablets", [ing("Captopril", 25)], "tablet",
            "ACE inhibitors", "pom", "C09AA01", "authorised", "MA104/01", "2004-10-12",
            "Bristol-Myers Squibb", "Uxbridge, United Kingdom"),
    product("Nurofen 200mg Tablets", [ing("Ibuprofen", 200)], "tablet",
            "NSAIDs", "otc", "M01AE01", "authorised", "MA105/01", "2011-01-19",
            "Reckitt Benckiser Healthcare", "Hull, United Kingdom"),
    product("Glucophage 500mg Tablets", [ing("Metformin hydrochloride", 500)], "tablet",
            "Biguanides", "pom", "A10BA02", "authorised", "MA106/01", "2007-08-06",
            "Merck Serono Limited", "Feltham, United Kingdom"),
    product("Epilim 200mg Gastro-resistant Tablets", [ing("Sodium valproate", 200)], "tablet",
            "Antiepileptics", "pom", "N03AG01", "authorised", "MA107/01", "2006-04-24",
            "Sanofi", "Paris, France"),
    product("Amoxil 250mg Capsules", [ing("Amoxicillin", 250)], "capsule",
            "Penicillins", "pom", "J01CA04", "authorised", "MA108/01", "2005-07-13",
            "GlaxoSmithKline (Ireland) Limited", "Dublin, Ireland"),
    # structurally invalid: non-positive dosage
    product("BrokenMed Tablets", [ing("Brokenol", 0)], "tablet",
            None, "pom", None, "authorised", "MA109/01", "2019-02-11",
            "Placeholder Pharma Limited", "Valletta, Malta"),
    product("Clarinase Repetabs Tablets",
            [ing("Loratadine", 5), ing("Pseudoephedrine sulfate", 120)], "tablet",
            "Antihistamines", "otc", "R01BA52", "authorised", "MA110/01", "2015-03-09",
            "Bayer plc", "Reading, United Kingdom"),
    product("Zinc Oxide Ointment BP", [ing("Zinc oxide", 150)], "ointment",
            "Emollients", "otc", None, "authorised", "MA111/01", "2003-06-30",
            "Thornton & Ross Limited", "Huddersfield, United Kingdom"),
    product("Ivermec Pour-On Solution", [ing("Ivermectin", 5)], "solution",
            "Antiparasitics", "pom", None, "authorised", "MA112/01", "2017-09-04",
            "VetMalta Limited", "Mosta, Malta"),
    product("Questran Light Powder", [ing("Colestyramine resin complex", 4000)], "powder",
            "Lipid-modifying agents", "pom", "C10AC01", "authorised", "MA113/01", "2002-11-25",
            "Cheplapharm Arzneimittel GmbH", "Greifswald, Germany"),
    product("HerbaSleep Night Syrup",
            [ing("valerian dry extract bx-77", 80), ing("hops extract zz-9", 30)], "syrup",
            None, "otc", None, "authorised", "MA114/01", "2020-06-18",
            "HerbaMed Limited", "Qormi, Malta"),
    product("Losec 20mg Capsules", [ing("Omeprazole", 20)], "capsule",
            "Proton pump inhibitors", "pom", "A02BC01", "authorised", "MA115/01", "2004-01-29",
            "CHEPLAPHARM Arzneimittel GmbH", "Greifswald, Germany"),
    product("Voltaren 50mg Tablets", [ing("Diclofenac sodium", 50)], "tablet",
            "NSAIDs", "pom", "M01AB05", "authorised", "MA116/01", "2009-12-07",
            "Novartis Pharmaceuticals UK Limited", "London, United Kingdom"),
    product("Ventolin 100mcg Inhaler", [ing("Salbutamol sulfate", 100, "mcg")], "inhaler",
            "Beta2-adrenoceptor agonists", "pom", "R03AC02", "authorised", "MA117/01", "2010-03-16",
            "Glaxo Wellcome UK Limited", "Brentford, United Kingdom"),
    product("Glucovance 500mg/5mg Tablets",
            [ing("Metformin hydrochloride", 500), ing("Glibenclamide", 5)], "tablet",
            "Biguanides", "pom", "A10BD02", "authorised", "MA118/01", "2012-10-01",
            "Merck Serono Limited", "Feltham, United Kingdom"),
    product("Sinemet 25mg/100mg Tablets",
            [ing("Carbidopa", 25), ing("Levodopa", 100)], "tablet",
            "Dopaminergic drugs", "pom", "N04BA02", "authorised", "MA119/01", "2008-08-14",
            "Organon Pharma (UK) Limited", "London, United Kingdom"),
    product("Eltroxin 50mcg Tablets", [ing("Levothyroxine sodium", 50, "mcg")], "tablet",
            "Thyroid hormones", "pom", "H03AA01", "authorised", "MA120/01", "2006-09-19",
            "Advanz Pharma", "London, United Kingdom"),
    product("Cipramil 20mg Tablets", [ing("Citalopram hydrobromide", 20)], "tablet",
            "SSRIs", "pom", "N06AB04", "authorised", "MA121/01", "2011-11-23",
            "Lundbeck Limited", "Milton Keynes, United Kingdom"),
    product("Melatonin Pharma Nord 3mg Tablets", [ing("Melatonin", 3)], "tablet",
            "Hypnotics", "otc", "N05CH01", "authorised", "MA122/01", "2021-02-08",
            "Pharma Nord ApS", "Vojens, Denmark"),
]

def mono(name, constituents=(), indications=(), side_effects=(), interactions=(),
         contraindications=(), cautions=(), pregnancy=None, breastfeeding=None,
         allergies=(), therapeutic_class=None, drug_action=None, hepatic=None,
         renal=None, advice=None, safety=None):
    return {
        "name": name,
        "constituents": list(constituents),
        "indications": list(indications),
        "side_effects": [se if isinstance(se, dict) else {"name": se, "frequency": None, "severity": None}
                          for se in side_effects],
        "interactions": list(interactions),
        "contraindications": list(contraindications),
        "cautions": list(cautions),
        "pregnancy": pregnancy,
        "breastfeeding": breastfeeding,
        "allergies": list(allergies),
        "therapeutic_class": therapeutic_class,
        "drug_action": drug_action,
        "hepatic_impairment": hepatic,
        "renal_impairment": renal,
        "patient_advice": advice,
        "safety_info": safety,
    }

def se(name, frequency=None, severity=None):
    return {"name": name, "frequency": frequency, "severity": severity}

def ddi(partner, itype, severity=None, note=None):
    return {"partner_name": partner, "interaction_type": itype, "severity": severity, "note": note}

BNF = [
    mono("Paracetamol",
         indications=["Mild to moderate pain", "Pyrexia"],
         side_effects=[se("thrombocytopenia", "very_rare")],
         contraindications=["Severe hepatic impairment"],
         cautions=["Chronic alcohol consumption", "Body weight under 50 kg"],
         pregnancy="Not known to be harmful; use the lowest effective dose.",
         breastfeeding="Amount in milk too small to be harmful.",
         therapeutic_class="Non-opioid analgesics",
         drug_action="Inhibits central prostaglandin synthesis.",
         hepatic="Dose-related toxicity; avoid large doses.",
         advice="Do not exceed 4 g per day in adults."),
    mono("Cetirizine hydrochloride",
         indications=["Allergic rhinitis", "Chronic idiopathic urticaria"],
         side_effects=[se("somnolence", "common"), se("dry mouth", "common")],
         cautions=["Epilepsy"],
         pregnancy="Use only if necessary; limited data.",
         breastfeeding="Present in milk; avoid.",
         therapeutic_class="Antihistamines, non-sedating",
         renal="Halve dose if creatinine clearance below 30 ml/min."),
    mono("Esomeprazole",
         indications=["Gastro-oesophageal reflux disease", "Gastric ulcer"],
         side_effects=[se("headache", "common"), se("abdominal pain", "common")],
         cautions=["May mask symptoms of gastric cancer"],
         pregnancy="Limited data; caution advised.",
         breastfeeding="Unknown whether present in milk.",
         therapeutic_class="Proton pump inhibitors"),
    mono("Co-amoxiclav",
         constituents=["Amoxicillin", "Clavulanic acid"],
         indications=["Respiratory-tract infections", "Urinary-tract infections"],
         side_effects=[se("diarrhoea", "common"), se("cholestatic jaundice", "rare")],
         contraindications=["History of penicillin-associated jaundice"],
         allergies=["Penicillin hypersensitivity"],
         therapeutic_class="Penicillins"),
    mono("Amoxicillin",
         indications=["Susceptible infections", "Otitis media"],
         side_effects=[se("diarrhoea", "common"), se("skin rash", "uncommon")],
         allergies=["Penicillin hypersensitivity"],
         pregnancy="Not known to be harmful.",
         breastfeeding="Trace amounts in milk.",
         therapeutic_class="Penicillins"),
    mono("Warfarin sodium",
         indications=["Prophylaxis of embolisation in atrial fibrillation",
                      "Treatment of venous thrombosis"],
         side_effects=[se("haemorrhage", "common")],
         interactions=[
             ddi("Azithromycin", "increased anticoagulant effect", "severe",
                 "Monitor INR and adjust the warfarin dose"),
             ddi("Amlodipine", "pharmacodynamic", "moderate"),
             ddi("Lorazepam", "pharmacodynamic"),
             ddi("Digoxin", "pharmacokinetic", "moderate"),
             ddi("Diclofenac sodium", "increased risk of bleeding", "severe",
                 "Avoid concurrent use"),
         ],
         contraindications=["Haemorrhagic stroke", "Significant bleeding"],
         cautions=["Recent surgery"],
         pregnancy="Teratogenic; avoid in the first trimester.",
         breastfeeding="Not excreted in significant amounts.",
         therapeutic_class="Vitamin K antagonists",
         safety="Narrow therapeutic index; regular INR monitoring required."),
    mono("Amlodipine",
         indications=["Hypertension", "Prophylaxis of angina"],
         side_effects=[se("ankle swelling", "common"), se("flushing", "common")],
         therapeutic_class="Calcium-channel blockers"),
    mono("Lorazepam",
         indications=["Short-term use in anxiety"],
         side_effects=[se("drowsiness", "very_common")],
         cautions=["Dependence risk"],
         therapeutic_class="Benzodiazepines"),
    mono("Azithromycin",
         indications=["Respiratory-tract infections"],
         side_effects=[se("nausea", "very_common"), se("diarrhoea", "common")],
         interactions=[ddi("Warfarin sodium", "increased anticoagulant effect", "severe",
                           "Monitor INR and adjust the warfarin dose")],
         therapeutic_class="Macrolides"),
    mono("Digoxin",
         indications=["Heart failure", "Supraventricular arrhythmias"],
         side_effects=[se("bradycardia", "uncommon")],
         therapeutic_class="Cardiac glycosides",
         safety="Narrow therapeutic index."),
    mono("Lisinopril",
         indications=["Hypertension", "Heart failure"],
         side_effects=[se("dry cough", "common"), se("dizziness", "common")],
         therapeutic_class="ACE inhibitors"),
    mono("Ramipril",
         indications=["Hypertension", "Prophylaxis after myocardial infarction"],
         side_effects=[se("dry cough", "common")],
         therapeutic_class="ACE inhibitors"),
    mono("Enalapril maleate",
         indications=["Hypertension"],
         side_effects=[se("dry cough", "common")],
         therapeutic_class="ACE inhibitors"),
    mono("Perindopril erbumine",
         indications=["Hypertension"],
         side_effects=[se("dry cough", "common")],
         therapeutic_class="ACE inhibitors"),
    mono("Captopril",
         indications=["Hypertension", "Diabetic nephropathy"],
         side_effects=[se("dry cough", "common"), se("taste disturbance", "uncommon")],
         therapeutic_class="ACE inhibitors"),
    mono("Ibuprofen",
         indications=["Pain and inflammation in rheumatic disease", "Mild to moderate pain"],
         side_effects=[
             se("dyspepsia", "common"),
             se("nausea", "common"),
             se("rash", "uncommon"),
             se("gastrointestinal haemorrhage", "rare", "serious"),
         ],
         contraindications=["Active gastro-intestinal ulceration"],
         cautions=["Elderly", "Asthma"],
         pregnancy="Avoid unless essential; avoid entirely in the third trimester.",
         breastfeeding="Amount in milk too small to be harmful.",
         therapeutic_class="NSAIDs"),
    mono("Metformin hydrochloride",
         indications=["Type 2 diabetes mellitus", "Polycystic ovary syndrome"],
         side_effects=[se("gastrointestinal discomfort", "very_common"), se("taste disturbance", "common")],
         contraindications=["Ketoacidosis"],
         renal="Avoid if eGFR below 30 ml/minute/1.73 m2.",
         therapeutic_class="Biguanides"),
    mono("Sodium valproate",
         indications=["Epilepsy", "Bipolar disorder"],
         side_effects=[se("tremor", "common"), se("weight gain", "common")],
         contraindications=["Acute porphyria"],
         pregnancy="Highly teratogenic; must not be used unless there is no suitable alternative and the pregnancy prevention programme is in place.",
         therapeutic_class="Antiepileptics",
         safety="Valproate pregnancy prevention programme applies."),
    mono("Loratadine",
         indications=["Allergic rhinitis", "Urticaria"],
         side_effects=[se("headache", "uncommon")],
         therapeutic_class="Antihistamines, non-sedating"),
    mono("Omeprazole",
         indications=["Gastro-oesophageal reflux disease", "Duodenal ulcer"],
         side_effects=[se("headache", "common")],
         therapeutic_class="Proton pump inhibitors"),
    mono("Diclofenac sodium",
         indications=["Pain and inflammation in rheumatic disease"],
         side_effects=[se("dyspepsia", "common")],
         interactions=[ddi("Warfarin sodium", "increased risk of bleeding", "severe",
                           "Avoid concurrent use")],
         contraindications=["Ischaemic heart disease"],
         therapeutic_class="NSAIDs"),
    mono("Salbutamol",
         indications=["Asthma", "Other conditions associated with reversible airways obstruction"],
         side_effects=[se("fine tremor", "common"), se("tachycardia", "uncommon")],
         therapeutic_class="Selective beta2-agonists"),
    mono("Glibenclamide",
         indications=["Type 2 diabetes mellitus"],
         side_effects=[se("hypoglycaemia", "common")],
         therapeutic_class="Sulfonylureas"),
    mono("Co-careldopa",
         constituents=["Carbidopa", "Levodopa"],
         indications=["Parkinson's disease"],
         side_effects=[se("dyskinesia", "common")],
         therapeutic_class="Dopaminergic drugs"),
    mono("Citalopram",
         indications=["Depressive illness", "Panic disorder"],
         side_effects=[se("insomnia", "common")],
         therapeutic_class="Selective serotonin re-uptake inhibitors"),
    mono("Levothyroxine sodium",
         indications=["Hypothyroidism"],
         side_effects=[se("palpitations", "uncommon")],
         therapeutic_class="Thyroid hormones"),
]

def entry(db_id, primary, synonyms=(), salts=(), atc=(), ddis=(), nti=False, description=None):
    return {
        "drugbank_id": db_id,
        "primary_name": primary,
        "synonyms": list(synonyms),
        "salts": [{"salt_name": s} for s in salts],
        "description": description,
        "atc_codes": list(atc),
        "ddis": list(ddis),
        "targets": [],
        "enzymes": [],
        "transporters": [],
        "carriers": [],
        "narrow_therapeutic_index": nti,
        "food_interactions": [],
    }

def dbddi(partner, description, mechanism=None, severity=None):
    return {"partner_drugbank_id": partner, "description": description,
            "mechanism": mechanism, "severity": severity}

WARFARIN_DICLO = ("Increased risk of bleeding when combined with warfarin",
                  "inhibition of platelet aggregation", "major")
WARFARIN_AMOX = ("May increase the anticoagulant activity of warfarin",
                 "reduction of intestinal vitamin K synthesis", "moderate")
EPI_SALB = ("Additive sympathomimetic effects increase the risk of cardiovascular adverse events",
            "additive beta-adrenergic stimulation", "moderate")

DRUGBANK = [
    entry("DB00215", "Citalopram", salts=["Citalopram hydrobromide"], atc=["N06AB04"],
          description="A selective serotonin re-uptake inhibitor antidepressant."),
    entry("DB00341", "Cetirizine", salts=["Cetirizine hydrochloride"], atc=["R06AE07"],
          description="A second-generation piperazine antihistamine."),
    entry("DB00586", "Diclofenac", salts=["Diclofenac sodium", "Diclofenac potassium"],
          atc=["M01AB05"], ddis=[dbddi("DB00682", *WARFARIN_DICLO)]),
    entry("DB00668", "Epinephrine", synonyms=["Adrenaline", "Adrenalin", "L-Adrenaline"],
          salts=["Epinephrine bitartrate"], atc=["C01CA24"],
          ddis=[dbddi("DB01001", *EPI_SALB)],
          description="An endogenous catecholamine used in anaphylaxis and resuscitation."),
    entry("DB00682", "Warfarin", salts=["Warfarin sodium"], atc=["B01AA03"], nti=True,
          ddis=[dbddi("DB00586", *WARFARIN_DICLO), dbddi("DB01060", *WARFARIN_AMOX)],
          description="A coumarin anticoagulant antagonising vitamin K."),
    entry("DB00736", "Esomeprazole", salts=["Esomeprazole magnesium", "Esomeprazole sodium"],
          atc=["A02BC05"],
          description="The S-enantiomer of omeprazole; a proton pump inhibitor."),
    entry("DB00852", "Pseudoephedrine", synonyms=["d-Pseudoephedrine"],
          salts=["Pseudoephedrine sulfate", "Pseudoephedrine hydrochloride"], atc=["R01BA02"]),
    entry("DB01001", "Salbutamol", synonyms=["Albuterol"], salts=["Salbutamol sulfate"],
          atc=["R03AC02"], ddis=[dbddi("DB00668", *EPI_SALB)]),
    entry("DB01060", "Amoxicillin", synonyms=["Amoxycillin"], salts=["Amoxicillin trihydrate"],
          atc=["J01CA04"], ddis=[dbddi("DB00682", *WARFARIN_AMOX)]),
    entry("DB01065", "Melatonin", synonyms=["N-Acetyl-5-methoxytryptamine"], atc=["N05CH01"],
          description="A pineal hormone regulating circadian rhythm."),
    entry("DB01432", "Colestyramine", synonyms=["Cholestyramine", "Questran", "Questran Light"],
          atc=["C10AC01"],
          ddis=[dbddi("DB00682", "Colestyramine can decrease the absorption of warfarin",
                       "bile acid sequestration reduces enteric reabsorption", "moderate")]),
]

PUBCHEM = [
    {"cid": 702, "name": "Ethanol", "synonyms": ["ethyl alcohol"]},
    {"cid": 1983, "name": "Acetaminophen", "synonyms": ["Paracetamol", "4-acetamidophenol"]},
    {"cid": 2519, "name": "Caffeine", "synonyms": ["1,3,7-trimethylxanthine"]},
    {"cid": 14806, "name": "Zinc oxide", "synonyms": ["zinc white", "calamine base"]},
    {"cid": 6321424, "name": "Ivermectin", "synonyms": ["MK-933"]},
]

def write(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

write("mma.jsonl", MMA)
write("bnf.jsonl", BNF)
write("drugbank.jsonl", DRUGBANK)
write("pubchem.jsonl", PUBCHEM)
print(f"mma={len(MMA)} bnf={len(BNF)} drugbank={len(DRUGBANK)} pubchem={len(PUBCHEM)}")
