"""Published reference values for C(2n,4), kept as printed (decimal strings).

``TABLE1`` maps n to (alpha0, cs of the complete structure); ``TABLE2``
maps n to {k: (cs of the orbifold X_2n(2pi/k), cs of the k-fold cyclic cover)}.
"""

TABLE1 = {
    1: ("2.5741407781", "0.155977"),
    2: ("2.8476422723", "0"),
    3: ("2.9424657544", "0.427829"),
    4: ("2.9909391796", "0.389237"),
    5: ("3.0204096324", "0.365487"),
    6: ("3.0402286045", "0.349444"),
    7: ("3.0544727854", "0.337893"),
    8: ("3.0652052902", "0.329184"),
    9: ("3.0735826570", "0.322385"),
    -1: ("2.4071698136", "0.346796"),
    -2: ("2.8082099376", "0.0217267"),
    -3: ("2.9251055596", "0.100298"),
    -4: ("2.9812057191", "0.141585"),
    -5: ("3.0141894961", "0.166665"),
    -6: ("3.0359125478", "0.183452"),
    -7: ("3.0513033433", "0.195458"),
    -8: ("3.0627794492", "0.204466"),
    -9: ("3.0716663560", "0.211471"),
}

TABLE2 = {
    1: {3: ('0.0791366', '0.23741'), 4: ('0.105075', '0.420301'), 5: ('0.0215424', '0.107712'), 6: ('0.13151', '0.789057'), 7: ('0.0663635', '0.464545'), 8: ('0.0169609', '0.135687'), 9: ('0.0337443', '0.303699'), 10: ('0.0469426', '0.469426')},
    2: {3: ('0', '0'), 4: ('0', '0'), 5: ('0', '0'), 6: ('0', '0'), 7: ('0', '0'), 8: ('0', '0'), 9: ('0', '0'), 10: ('0', '0')},
    3: {3: ('0.125912', '0.377736'), 4: ('0.192764', '0.771058'), 5: ('0.0360431', '0.180216'), 6: ('0.0996796', '0.598077'), 7: ('0.00284328', '0.0199029'), 8: ('0.0554674', '0.443739'), 9: ('0.0409685', '0.368717'), 10: ('0.0294401', '0.294401')},
    4: {3: ('0.098074', '0.294222'), 4: ('0.157843', '0.631371'), 5: ('0.0993608', '0.496804'), 6: ('0.0622858', '0.373715'), 7: ('0.0365103', '0.255572'), 8: ('0.0174882', '0.139906'), 9: ('0.00284881', '0.0256393'), 10: ('0.091224', '0.91224')},
    5: {3: ('0.0781956', '0.234587'), 4: ('0.135356', '0.541426'), 5: ('0.0762905', '0.381452'), 6: ('0.03897', '0.23382'), 7: ('0.0130642', '0.0914491'), 8: ('0.118964', '0.951709'), 9: ('0.0348287', '0.313458'), 10: ('0.067613', '0.67613')},
    6: {3: ('0.0637865', '0.191359'), 4: ('0.119879', '0.479518'), 5: ('0.0605612', '0.302806'), 6: ('0.0231302', '0.138781'), 7: ('0.068593', '0.480151'), 8: ('0.103028', '0.82422'), 9: ('0.0188687', '0.169818'), 10: ('0.0516364', '0.516364')},
    7: {3: ('0.053045', '0.159135'), 4: ('0.108627', '0.434509'), 5: ('0.0491795', '0.245897'), 6: ('0.0116899', '0.0701393'), 7: ('0.0571206', '0.399844'), 8: ('0.0915354', '0.732283'), 9: ('0.00736345', '0.066271'), 10: ('0.0401222', '0.401222')},
    8: {3: ('0.044788', '0.134364'), 4: ('0.100093', '0.400374'), 5: ('0.0405713', '0.202857'), 6: ('0.00304774', '0.0182864'), 7: ('0.0484584', '0.339209'), 8: ('0.0828601', '0.662881'), 9: ('0.054236', '0.488124'), 10: ('0.0314349', '0.314349')},
    9: {3: ('0.0382642', '0.114793'), 4: ('0.0934054', '0.373621'), 5: ('0.033837', '0.169185'), 6: ('0.162945', '0.977669'), 7: ('0.0416815', '0.29177'), 8: ('0.0760594', '0.608475'), 9: ('0.0474461', '0.427015'), 10: ('0.0246406', '0.246406')},
    -1: {3: ('0.0200144', '0.0600431'), 4: ('0.186811', '0.747246'), 5: ('0.00166667', '0.00833333'), 6: ('0.0504622', '0.302773'), 7: ('0.0163442', '0.11441'), 8: ('0.11699', '0.935921'), 9: ('0.0292902', '0.263612'), 10: ('0.0595432', '0.595432')},
    -2: {3: ('0.12215', '0.366451'), 4: ('0.0625', '0.25'), 5: ('0.0428241', '0.21412'), 6: ('0.0345888', '0.207533'), 7: ('0.0304384', '0.213069'), 8: ('0.0280513', '0.22441'), 9: ('0.0265452', '0.238907'), 10: ('0.0255297', '0.255297')},
    -3: {3: ('0.0009078', '0.0027234'), 4: ('0.125712', '0.502846'), 5: ('0.0135112', '0.067556'), 6: ('0.108473', '0.650837'), 7: ('0.0344724', '0.241307'), 8: ('0.1044', '0.835201'), 9: ('0.0478866', '0.430979'), 10: ('0.00279032', '0.0279032')},
    -4: {3: ('0.0310079', '0.0930237'), 4: ('0.163984', '0.655935'), 5: ('0.0535467', '0.267733'), 6: ('0.149078', '0.894467'), 7: ('0.00389753', '0.0272827'), 8: ('0.0203848', '0.163079'), 9: ('0.0333937', '0.300543'), 10: ('0.0439034', '0.439034')},
    -5: {3: ('0.0524295', '0.157288'), 4: ('0.188321', '0.753285'), 5: ('0.078347', '0.391735'), 6: ('0.0073491', '0.0440946'), 7: ('0.0288918', '0.202242'), 8: ('0.0454073', '0.363258'), 9: ('0.00287658', '0.0258892'), 10: ('0.068952', '0.68952')},
    -6: {3: ('0.0678857', '0.203657'), 4: ('0.204874', '0.819494'), 5: ('0.0950581', '0.47529'), 6: ('0.0241032', '0.144619'), 7: ('0.0456616', '0.319631'), 8: ('0.062184', '0.497472'), 9: ('0.0196569', '0.176912'), 10: ('0.0857343', '0.857343')},
    -7: {3: ('0.0793285', '0.237985'), 4: ('0.216795', '0.867182'), 5: ('0.00704512', '0.0352256'), 6: ('0.0361054', '0.216632'), 7: ('0.0576682', '0.403677'), 8: ('0.074192', '0.593536'), 9: ('0.0316653', '0.284987'), 10: ('0.0977426', '0.977426')},
    -8: {3: ('0.088066', '0.264198'), 4: ('0.225772', '0.903087'), 5: ('0.0160513', '0.0802563'), 6: ('0.0451171', '0.270702'), 7: ('0.0666807', '0.466765'), 8: ('0.0832028', '0.665622'), 9: ('0.0406762', '0.366085'), 10: ('0.00675282', '0.0675282')},
    -9: {3: ('0.0949296', '0.284789'), 4: ('0.232766', '0.931066'), 5: ('0.0230607', '0.115304'), 6: ('0.052117', '0.312702'), 7: ('0.00225322', '0.0157726'), 8: ('0.0901914', '0.721531'), 9: ('0.0476676', '0.429008'), 10: ('0.0137386', '0.137386')},
}

# the orbifold spot set used for regression
SPOT_N = (1, 2, 3, -1, -2, -3)
SPOT_K = (3, 4, 5, 10)
